from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from munnlab.errors import ModularCase
from munnlab.exact_linalg import field_make, mat_rank
from munnlab.group_algebra import (
    AlgebraElement,
    as_algebra_grid,
    auto_char,
    check_wedderburn,
    component_matrix,
    component_rank,
    regular_block_rank,
    regular_matrix,
    split_char,
    wedderburn,
)
from munnlab.groups import catalog, group_builtin

F5 = field_make(5)
C2 = group_builtin("cyclic(2)")
C3 = group_builtin("cyclic(3)")
S3 = group_builtin("symmetric(3)")


def test_regular_matrix_examples():
    e = AlgebraElement.basis(C2, F5, 0)
    g = AlgebraElement.basis(C2, F5, 1)
    assert regular_matrix(e).tolist() == [[1, 0], [0, 1]]
    assert regular_matrix(g).tolist() == [[0, 1], [1, 0]]
    assert regular_matrix(e + g).tolist() == [[1, 1], [1, 1]]


@given(st.sampled_from(["cyclic(4)", "symmetric(3)", "dihedral(4)"]), st.integers(0, 10**6))
def test_regular_matrix_is_multiplicative(spec, seed):
    G = group_builtin(spec)
    F = field_make(7)
    rng = random.Random(seed)
    x = AlgebraElement(G, F, np.array([rng.randrange(7) for _ in range(G.order)]))
    y = AlgebraElement(G, F, np.array([rng.randrange(7) for _ in range(G.order)]))
    assert regular_matrix(x * y) == regular_matrix(x) @ regular_matrix(y)


def test_wedderburn_c3_f5():
    assert wedderburn(C3, 5).summary() == [(1, 1, 1), (2, 1, 2)]


def test_wedderburn_c3_f7():
    assert wedderburn(C3, 7).summary() == [(1, 1, 1)] * 3


def test_wedderburn_s3_f5():
    wd = wedderburn(S3, 5)
    assert wd.summary() == [(1, 1, 1), (1, 1, 1), (1, 2, 2)]
    assert sum(c.c**2 * c.d for c in wd) == 6


def test_wedderburn_modular():
    with pytest.raises(ModularCase):
        wedderburn(S3, 3)


def test_characteristic_helpers():
    assert auto_char(S3) == 5
    assert split_char(C3) == 7
    assert split_char(S3) == 7
    assert auto_char(group_builtin("cyclic(1)")) == 2


def _valid_chars(G, chars=(5, 7, 11, 13)):
    return [p for p in chars if G.order % p]


@pytest.mark.parametrize("spec", catalog(12))
def test_wedderburn_invariants_catalog(spec):
    G = group_builtin(spec)
    for p in _valid_chars(G):
        wd = wedderburn(G, p)
        check_wedderburn(wd)
        one = AlgebraElement.one(G, wd.field)
        total = AlgebraElement.zero(G, wd.field)
        for i, a in enumerate(wd):
            assert a.idempotent * a.idempotent == a.idempotent
            assert a.idempotent.is_central()
            assert a.u == a.c * a.d
            for j, b in enumerate(wd):
                if i != j:
                    assert (a.idempotent * b.idempotent).is_zero()
            total = total + a.idempotent
        assert total == one
        assert sum(c.c**2 * c.d for c in wd) == G.order
        assert sum(c.d for c in wd) == len(G.conjugacy_classes)


@pytest.mark.parametrize("spec", catalog(12))
def test_split_characteristic_gives_degree_one(spec):
    G = group_builtin(spec)
    assert all(c.d == 1 for c in wedderburn(G, split_char(G)))


def test_wedderburn_deterministic_across_seeds():
    G = group_builtin("dihedral(4)")
    a = wedderburn(G, 5, seed=0)
    b = wedderburn(G, 5, seed=3)
    assert a.summary() == b.summary()
    for x, y in zip(a, b):
        assert x.idempotent == y.idempotent


def test_component_rank_examples():
    C1 = group_builtin("cyclic(1)")
    (comp,) = wedderburn(C1, 2)
    assert component_rank([[0, None], [None, None]], comp) == 1
    wd = wedderburn(C2, 5)
    # the trivial idempotent (e + g)/2 has equal coefficients
    triv = next(c for c in wd if len(set(c.idempotent.coeffs.tolist())) == 1)
    sign = next(c for c in wd if c is not triv)
    assert [component_rank([[0, 0], [0, 0]], c) for c in (triv, sign)] == [1, 1]
    assert [component_rank([[0, 0], [0, 1]], c) for c in (triv, sign)] == [1, 2]


def _random_grid(G, P, Q, rng):
    return [[None if rng.random() < 0.3 else rng.randrange(G.order) for _ in range(Q)] for _ in range(P)]


@pytest.mark.parametrize("spec,p", [("symmetric(3)", 5), ("cyclic(3)", 5), ("dihedral(4)", 3), ("cyclic(5)", 2)])
def test_component_rank_matches_explicit_mu_k(spec, p):
    # independent oracle: rank of mu_k over F_k built from an explicit simple module
    G = group_builtin(spec)
    wd = wedderburn(G, p)
    rng = random.Random(17)
    for _ in range(8):
        grid = _random_grid(G, rng.randint(1, 3), rng.randint(1, 3), rng)
        for comp in wd:
            assert component_rank(grid, comp) == mat_rank(component_matrix(grid, comp))


@pytest.mark.parametrize("spec,p", [("cyclic(4)", 5), ("symmetric(3)", 7), ("dihedral(4)", 5)])
def test_regular_rank_is_sum_of_r_times_u(spec, p):
    G = group_builtin(spec)
    wd = wedderburn(G, p)
    rng = random.Random(5)
    for _ in range(6):
        grid = _random_grid(G, rng.randint(1, 3), rng.randint(1, 3), rng)
        mu = as_algebra_grid(G, wd.field, grid)
        if all(x.is_zero() for r in mu for x in r):
            continue
        ranks = [component_rank(grid, c) for c in wd]
        assert regular_block_rank(mu) == sum(r * c.u for r, c in zip(ranks, wd))


def _transform(G, grid, op, i, a):
    grid = [list(r) for r in grid]
    if op == "left_row":
        grid[i] = [None if x is None else G.mul(a, x) for x in grid[i]]
    else:
        for r in grid:
            if r[i] is not None:
                r[i] = G.mul(r[i], a)
    return grid


@given(st.integers(0, 10**6))
def test_component_rank_invariant_under_elementary_operations(seed):
    G = S3
    wd = wedderburn(G, 5)
    rng = random.Random(seed)
    grid = _random_grid(G, 3, 2, rng)
    ranks = [component_rank(grid, c) for c in wd]
    moved = [list(r) for r in grid]
    rng.shuffle(moved)
    moved = _transform(G, moved, "left_row", rng.randrange(3), rng.randrange(6))
    moved = _transform(G, moved, "right_col", rng.randrange(2), rng.randrange(6))
    moved = [list(r)[::-1] for r in moved]
    assert [component_rank(moved, c) for c in wd] == ranks
