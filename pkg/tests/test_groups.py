from __future__ import annotations

import math

import numpy as np
import pytest

from munnlab.errors import InvalidGroup, InvalidInput
from munnlab.groups import (
    catalog,
    cyclic,
    dihedral,
    direct_product,
    exponent,
    group_builtin,
    group_from_table,
    symmetric,
)


def test_trivial_table():
    G = group_from_table([[0]])
    assert G.order == 1 and G.identity == 0


def test_c2_table():
    G = group_from_table([[0, 1], [1, 0]])
    assert G.order == 2 and G.inverse == (0, 1)


def test_bad_row_rejected():
    with pytest.raises(InvalidGroup) as exc:
        group_from_table([[0, 1], [1, 1]])
    assert exc.value.witness is not None


def test_non_associative_rejected_with_witness():
    # a Latin square with identity 0 that is not associative (order 5)
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(InvalidGroup) as exc:
        group_from_table(table)
    a, b, c = exc.value.witness
    t = table
    assert t[t[a][b]][c] != t[a][t[b][c]]


@pytest.mark.parametrize(
    "spec,order",
    [
        ("cyclic(3)", 3),
        ("symmetric(3)", 6),
        ("direct_product(cyclic(2), cyclic(2))", 4),
        ("dihedral(4)", 8),
        ("symmetric(4)", 24),
    ],
)
def test_builtin_orders(spec, order):
    assert group_builtin(spec).order == order


def test_klein_four_is_abelian_exponent_2():
    V = group_builtin("direct_product(cyclic(2), cyclic(2))")
    assert V.is_abelian and exponent(V) == 2


def test_unsupported_spec():
    for bad in ("quaternion(8)", "symmetric(6)", "cyclic(0)", "cyclic(x)"):
        with pytest.raises(InvalidInput):
            group_builtin(bad)


def test_order_cap():
    with pytest.raises(InvalidInput):
        symmetric(5)
    assert symmetric(5, max_order=120).order == 120


@pytest.mark.parametrize("spec,e", [("cyclic(3)", 3), ("symmetric(3)", 6), ("dihedral(2)", 2)])
def test_exponent_examples(spec, e):
    assert exponent(group_builtin(spec)) == e


CATALOG = catalog(24)


@pytest.mark.parametrize("spec", CATALOG)
def test_catalog_groups_are_associative(spec):
    G = group_builtin(spec)
    T = G.array
    # exhaustive (ab)c == a(bc), vectorized
    left = T[T, :]  # left[a, b, c] = (ab)c
    right = T[:, T]  # right[a, b, c] = a(bc)
    assert np.array_equal(left, right)
    assert exponent(G) > 0 and G.order % exponent(G) == 0
    for a in range(G.order):
        assert G.mul(a, G.inverse[a]) == G.identity


@pytest.mark.parametrize("n", range(1, 13))
def test_cyclic_has_one_element_per_order_divisor(n):
    G = cyclic(n)
    orders = [G.element_order(a) for a in range(n)]
    for d in range(1, n + 1):
        if n % d == 0:
            # a cyclic group has phi(d) elements of order d, hence one cyclic subgroup
            assert orders.count(d) == sum(1 for k in range(1, d + 1) if math.gcd(k, d) == 1)
    assert sorted(set(orders)) == [d for d in range(1, n + 1) if n % d == 0]


def test_class_counts():
    assert len(symmetric(3).conjugacy_classes) == 3
    assert len(dihedral(4).conjugacy_classes) == 5
    assert len(symmetric(4).conjugacy_classes) == 5
    assert len(cyclic(7).conjugacy_classes) == 7


def test_labels_and_tokens():
    D = dihedral(3)
    assert D.element("r") == 1 and D.element("#4") == 4
    assert D.mul(D.element("s"), D.element("s")) == D.identity
    P = direct_product(cyclic(2), cyclic(3))
    assert P.labels[0] == "e" and len(set(P.labels)) == 6
    with pytest.raises(InvalidInput):
        D.element("nope")


def test_first_generator_generates_cyclic_part():
    G = cyclic(6)
    assert G.element_order(G.first_generator) == 6
