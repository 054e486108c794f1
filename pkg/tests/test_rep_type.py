from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from munnlab.errors import ClassifierDisagreement
from munnlab.groups import group_builtin
from munnlab.munn import UnionPart, rees_make, single_part_union, triple_set, triples, union_data, union_from_parts
from munnlab.rep_type import (
    FINITE,
    TAME,
    WILD,
    RepTypeVerdict,
    Verdicts,
    check_agreement,
    classify_by_graph,
    classify_munn,
    classify_rees,
    classify_union,
    graph_verdict_kind,
    triple_atoms,
    triple_sets_up_to,
)

C1 = group_builtin("cyclic(1)")
C2 = group_builtin("cyclic(2)")


@pytest.mark.parametrize(
    "T,kind,case",
    [
        ([(1, 1, 1)], FINITE, "munn-1b"),
        ([(2, 1, 1)], TAME, "munn-2a"),
        ([(1, 1, 1)] * 3, WILD, "munn-3"),
        ([(1, 1, 0)] * 4, TAME, "munn-2b"),
        ([], FINITE, "munn-1a"),
        ([(1, 1, 0), (2, 0, 1)], FINITE, "munn-1a"),
        ([(1, 1, 1), (1, 1, 0), (1, 1, 0), (1, 0, 1), (1, 0, 1)], TAME, "munn-2c"),
    ],
)
def test_classify_munn_examples(T, kind, case):
    v = classify_munn(T)
    assert (v.kind, v.evidence) == (kind, case)
    assert classify_by_graph(T).kind == kind


# the named boundary sets of the Munn criterion
BOUNDARY = [
    ([(1, 1, 1)], FINITE),
    ([(1, 1, 1), (1, 1, 1)], TAME),
    ([(2, 1, 1)], TAME),
    ([(1, 2, 0)], TAME),
    ([(1, 0, 2)], TAME),
    ([(1, 1, 0)] * 4, TAME),
    ([(1, 0, 1)] * 4, TAME),
    ([(2, 1, 0), (2, 1, 0)], TAME),
    ([(1, 1, 0)] * 5, WILD),
    ([(4, 0, 1), (1, 0, 1)], WILD),
]


@pytest.mark.parametrize("T,kind", BOUNDARY)
def test_boundary_sets(T, kind):
    assert classify_munn(T).kind == kind == classify_by_graph(T).kind


@pytest.mark.parametrize(
    "spec,char,grid,kind,case",
    [
        ("cyclic(1)", 2, [["e", "0"], ["0", "0"]], FINITE, "rees-1a"),
        ("cyclic(2)", 5, [["e", "e"], ["e", "e"]], TAME, "rees-2a"),
        ("cyclic(1)", 2, [["e"], ["0"], ["0"]], TAME, "rees-2c"),
        ("cyclic(3)", 2, [["e"], ["0"]], FINITE, "rees-1b"),
        ("cyclic(4)", 3, [["e"], ["0"]], TAME, "rees-2b"),
        ("cyclic(5)", 2, [["e"], ["0"]], WILD, "rees-3"),
    ],
)
def test_classify_rees_examples(spec, char, grid, kind, case):
    G = group_builtin(spec)
    T = triples(rees_make(G, len(grid), len(grid[0]), grid), char)
    v = classify_rees(T, G.order)
    assert (v.kind, v.evidence) == (kind, case)
    assert classify_by_graph(T).kind == kind == classify_munn(T).kind


def test_classify_union_examples():
    S = rees_make(C1, 2, 2, [["e", "0"], ["0", "0"]])
    v = classify_union(union_data([(S, 2)]))
    assert (v.kind, v.evidence) == (FINITE, "union-1b")
    v = classify_union(union_data([(S, 2), (S, 2)]))
    assert (v.kind, v.evidence) == (TAME, "union-2c")
    S = rees_make(C1, 3, 1, [["e"], ["0"], ["0"]])
    v = classify_union(union_data([(S, 2)]))
    assert (v.kind, v.evidence) == (TAME, "union-2d")


def test_union_tame_clauses():
    one = lambda T, order, sign: UnionPart(None, triple_set(T), order, sign)  # noqa: E731
    U = union_from_parts([one([(1, 1, 0)], 4, 1)])
    assert classify_union(U).evidence == "union-2a"
    U = union_from_parts([one([(1, 1, 1)], 1, 0), one([(1, 1, 0)], 2, 1), one([(1, 0, 1)], 2, -1)])
    assert classify_union(U).evidence == "union-2b"


def test_supplementary_clauses_and_literal_mode():
    T = [(1, 2, 0), (1, 0, 1)]
    assert classify_munn(T, literal=True).kind == WILD
    v = classify_munn(T)
    assert (v.kind, v.evidence) == (TAME, "munn-2a+") and v.notes
    assert classify_by_graph(T).kind == TAME
    U = single_part_union(triple_set(T), 1, 3, 1)
    assert classify_union(U).evidence == "union-2d+"
    assert classify_union(U, literal=True).kind == WILD


def test_empty_rees_triples():
    assert classify_rees(triple_set([]), 7).kind == FINITE
    assert classify_rees(triple_set([]), 7).evidence == "rees-semisimple"
    assert classify_rees(triple_set([]), 7, literal=True).kind == WILD


def test_check_agreement_raises():
    v = Verdicts(RepTypeVerdict(FINITE, "x"), RepTypeVerdict(TAME, "graph"))
    with pytest.raises(ClassifierDisagreement):
        check_agreement(v, "test")
    ok = Verdicts(RepTypeVerdict(TAME, "x"), RepTypeVerdict(TAME, "graph"))
    assert check_agreement(ok) is ok


def test_enumeration_sizes():
    assert len(triple_atoms(8, 4)) == 68
    sets = triple_sets_up_to(8, 4)
    assert len(sets) == len(set(sets)) == 2833
    assert () in sets


SMALL = triple_sets_up_to(6, 3)


def test_agreement_on_small_family():
    for T in SMALL:
        assert classify_munn(T).kind == graph_verdict_kind(T), T


def test_wild_is_monotone_on_small_family():
    atoms = triple_atoms(3, 2)
    for T in SMALL:
        if graph_verdict_kind(T) != WILD:
            continue
        for a in atoms:
            bigger = T + (a,)
            assert classify_munn(bigger).kind == WILD == graph_verdict_kind(bigger)


@given(st.sampled_from(SMALL), st.randoms(use_true_random=False))
def test_verdict_permutation_invariance(T, rnd):
    items = list(T)
    rnd.shuffle(items)
    assert classify_munn(items) == classify_munn(T)
    assert classify_by_graph(items).kind == classify_by_graph(T).kind


@given(
    st.sampled_from(["cyclic(1)", "cyclic(2)", "cyclic(3)", "cyclic(4)", "dihedral(2)", "cyclic(5)", "symmetric(3)"]),
    st.integers(1, 3),
    st.integers(1, 3),
    st.randoms(use_true_random=False),
)
def test_single_part_union_matches_munn(spec, P, Q, rnd):
    G = group_builtin(spec)
    grid = [[rnd.choice([None] + list(range(G.order))) for _ in range(Q)] for _ in range(P)]
    if all(x is None for r in grid for x in r):
        grid[0][0] = G.identity
    S = rees_make(G, P, Q, grid)
    char = next(p for p in (2, 3, 5, 7) if G.order % p)
    T = triples(S, char)
    U = union_data([(S, char)])
    assert classify_union(U).kind == classify_munn(T).kind == classify_rees(T, G.order).kind
