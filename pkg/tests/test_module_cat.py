from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from munnlab.errors import BudgetExceeded, InvalidInput, NotInModPlus, RelationViolation, ShapeMismatch
from munnlab.module_cat import (
    HomTuple,
    direct_sum,
    enumerate_indecomposables,
    expected_census_count,
    find_isomorphism,
    from_graph_rep,
    graph_rep_make,
    hom_space,
    identity_hom,
    in_ideal_J,
    is_hom,
    is_in_mod_plus,
    is_in_rep_plus,
    is_indecomposable,
    module_make,
    phi_on_morphism,
    random_graph_rep,
    random_mod_plus,
    to_graph_rep,
    zero_module,
)

T111 = [(1, 1, 1)]


def two_one(p=2):
    """V_0 = k^2, V_1 = k, beta = (1,0)^T, alpha = (0,1)."""
    return module_make(T111, p, 2, [1], [[[[0, 1]]]], [[[[1], [0]]]])


def s0(p=2):
    return module_make(T111, p, 1, [0])


def s1(p=2):
    return module_make(T111, p, 0, [1])


# -- construction ---------------------------------------------------------------


def test_module_make_examples():
    V = two_one()
    assert V.dimension_vector == (2, 1)
    with pytest.raises(RelationViolation):
        module_make(T111, 2, 2, [1], [[[[1, 0]]]], [[[[1], [0]]]])
    Z = zero_module(T111, 2)
    assert Z.dim == 0


def test_module_make_shape_errors():
    with pytest.raises(ShapeMismatch):
        module_make(T111, 2, 2, [1], [[[[0, 1, 0]]]])
    with pytest.raises(ShapeMismatch):
        module_make(T111, 2, 2, [1, 1])
    with pytest.raises(InvalidInput):
        module_make(T111, 4, 1, [0])


def test_relation_across_components():
    T = [(1, 1, 0), (1, 0, 1)]
    # beta of component 2 lands where alpha of component 1 is nonzero
    with pytest.raises(RelationViolation):
        module_make(T, 2, 1, [1, 1], [[[[1]]], []], [[], [[[1]]]])


def test_mod_plus_examples():
    assert is_in_mod_plus(two_one())
    assert not is_in_mod_plus(s0())
    assert is_in_mod_plus(zero_module(T111, 2))
    assert is_in_mod_plus(s1())


def test_empty_index_conventions():
    # no alpha maps at all: the kernel meet is V_0
    T = [(1, 0, 1)]
    V = module_make(T, 2, 1, [1], None, [[[[1]]]])
    assert is_in_mod_plus(V)
    # no beta maps: the image sum is 0
    T = [(1, 1, 0)]
    V = module_make(T, 2, 1, [1], [[[[1]]]], None)
    assert is_in_mod_plus(V)


# -- functors -------------------------------------------------------------------


def test_phi_examples():
    W = to_graph_rep(two_one())
    assert W.dimension_vector == (1, 1, 1)
    assert W.alphas[0][0].tolist() == [[1]] and W.betas[0][0].tolist() == [[1]]
    V = module_make(T111, 2, 2, [2], [[[[1, 0], [0, 1]]]], None)
    W = to_graph_rep(V)
    assert (W.v_plus, W.v_minus) == (0, 2)
    W = to_graph_rep(zero_module(T111, 2))
    assert W.dimension_vector == (0, 0, 0)


def test_phi_strict_mode():
    with pytest.raises(NotInModPlus):
        to_graph_rep(s0(), strict=True)
    assert not to_graph_rep(s0()).in_mod_plus


def test_psi_examples():
    W = graph_rep_make(T111, 2, 1, 1, [1], [[[[1]]]], [[[[1]]]])
    V = from_graph_rep(W)
    assert V.dimension_vector == (2, 1)
    assert V.alphas[0][0].tolist() == [[0, 1]] and V.betas[0][0].tolist() == [[1], [0]]
    assert from_graph_rep(graph_rep_make(T111, 2, 0, 0, [0])).dim == 0
    triv = from_graph_rep(graph_rep_make(T111, 2, 1, 0, [0]))
    assert triv.dimension_vector == (1, 0) and not is_in_mod_plus(triv)


@pytest.mark.parametrize("T", [T111, [(2, 1, 1)], [(1, 2, 0), (1, 0, 1)], [(1, 1, 0), (2, 0, 1)]])
@pytest.mark.parametrize("p", [2, 3])
def test_round_trips(T, p):
    rng = random.Random(hash((tuple(T), p)) % 1000)
    for _ in range(6):
        W = random_graph_rep(T, (3, 2), p, rng)
        assert is_in_rep_plus(W)
        assert to_graph_rep(from_graph_rep(W)).same_data(W)
        V = random_mod_plus(T, (3, 2), p, rng)
        assert is_in_mod_plus(V)
        assert find_isomorphism(V, from_graph_rep(to_graph_rep(V))) is not None


# -- morphisms ------------------------------------------------------------------


def test_hom_examples():
    V = two_one()
    E = hom_space(V, V)
    assert len(E) == 2
    ident = identity_hom(V)
    assert any(np.array_equal(h.stacked(), ident.stacked()) for h in E.elements())
    assert len(hom_space(s0(), s1())) == 0
    with pytest.raises(ShapeMismatch):
        hom_space(V, module_make([(1, 1, 0)], 2, 1, [0]))


@given(st.integers(0, 10**6))
def test_hom_basis_solves_commutation(seed):
    rng = random.Random(seed)
    T = [(1, 1, 1), (2, 1, 0)]
    V = random_mod_plus(T, (2, 1), 2, rng)
    W = random_mod_plus(T, (2, 1), 2, rng)
    for h in hom_space(V, W).basis:
        assert is_hom(h, V, W)
    # End(V) contains the identity, so it is nonzero unless V is
    assert (len(hom_space(V, V)) >= 1) == (V.dim > 0)


def test_ideal_examples():
    V = two_one()
    assert not in_ideal_J(identity_hom(V), V, V)
    zero = HomTuple(np.zeros((2, 2), dtype=np.int64), (np.zeros((1, 1), dtype=np.int64),))
    assert in_ideal_J(zero, V, V)
    # phi_0 maps V_0 onto V_+ through V_0 / V_+, phi_1 = 0
    phi = HomTuple(np.array([[0, 1], [0, 0]]), (np.zeros((1, 1), dtype=np.int64),))
    assert is_hom(phi, V, V) and in_ideal_J(phi, V, V)


def _small_modules(T, p, rng, count):
    return [random_mod_plus(T, (2, 1), p, rng) for _ in range(count)]


@pytest.mark.parametrize("T", [T111, [(1, 1, 1), (1, 1, 0)], [(2, 1, 1)]])
def test_ideal_squares_to_zero_and_phi_kills_exactly_J(T):
    rng = random.Random(7)
    mods = _small_modules(T, 2, rng, 4)
    for V in mods:
        for W in mods:
            J_vw = []
            for phi in hom_space(V, W).elements():
                inJ = in_ideal_J(phi, V, W)
                assert phi_on_morphism(phi, V, W).is_zero() == inJ
                if inJ:
                    J_vw.append(phi)
            for X in mods[:2]:
                for psi in hom_space(W, X).elements():
                    if in_ideal_J(psi, W, X):
                        for phi in J_vw:
                            assert psi.compose(phi, 2).is_zero()


# -- indecomposability and the census ------------------------------------------


def test_indecomposable_examples():
    assert is_indecomposable(s1())
    assert not is_indecomposable(direct_sum(s0(), s1()))
    assert is_indecomposable(two_one())
    assert not is_indecomposable(zero_module(T111, 2))


def test_indecomposable_inconclusive():
    # End of k^9 with no maps is Mat(9, F_2): far beyond the search limit
    V = module_make([(1, 1, 0)], 2, 9, [0])
    assert is_indecomposable(V) is None


@pytest.mark.parametrize(
    "T,caps,count",
    [
        (T111, (3, 2), 5),
        ([(1, 1, 0)], (2, 2), 3),
        ([(1, 1, 0), (1, 0, 1)], (2, 1), 5),
        ([(2, 1, 0)], (2, 1), 4),
        ([(1, 1, 0), (1, 1, 0)], (2, 1), 6),
    ],
)
def test_census_counts(T, caps, count):
    c = enumerate_indecomposables(T, caps, 2)
    assert c.count == count == expected_census_count(T)
    assert c.match


def test_census_over_f3():
    assert enumerate_indecomposables(T111, (2, 1), 3).count == 5


def test_census_representatives_pairwise_non_isomorphic():
    c = enumerate_indecomposables(T111, (3, 2), 2)
    mods = c.modules
    for i, a in enumerate(mods):
        assert is_indecomposable(a)
        for b in mods[i + 1 :]:
            assert find_isomorphism(a, b) is None


def test_census_caps_zero():
    assert enumerate_indecomposables(T111, (0, 0), 2).count == 0


def test_census_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_indecomposables([(1, 2, 2)], (3, 3), 2, budget=10**4)


def test_census_field_restriction():
    with pytest.raises(InvalidInput):
        enumerate_indecomposables(T111, (1, 1), 5)
