"""Representation type: case analyses on triple sets and the graph classifier.

Case identifiers:

* ``munn-1a``, ``munn-1b``, ``munn-2a``, ``munn-2b``, ``munn-2c``, ``munn-3``:
  the clauses of the criterion for products of M(F_k, m_k, n_k).
* ``rees-1a`` ... ``rees-2c``, ``rees-3``: the Rees semigroup criterion.
* ``union-1a`` ... ``union-2d``, ``union-3``: unions of annihilating Rees
  semigroups.
* ``graph``: the Dynkin/Euclidean criterion applied to the valued graph.

Three supplementary clauses extend the case lists where the literal clauses
disagree with the graph criterion; each is reported under its own id and is
switched off by ``literal=True``:

* ``munn-2a+``: a Kronecker triple (1,2,0) (resp. (1,0,2)) together with
  one-sided triples attached only to the opposite vertex, of total weight at
  most 4, or both Kronecker triples alone.  The graph is then a Kronecker
  component plus a Dynkin or Euclidean star.
* ``union-2d+``: the same configuration for unions.
* ``rees-semisimple``: an empty triple set, i.e. a semisimple algebra, which
  the one-sided clauses would otherwise classify by #(G).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .errors import ClassifierDisagreement
from .munn import Triple, TripleSet, UnionData, single_part_union, triple_set
from .valued_graph import ComponentClass, classify_components, graph_from_triples, graph_kind

FINITE, TAME, WILD = "Finite", "Tame", "Wild"

KRONECKER_PLUS = (1, 2, 0)
KRONECKER_MINUS = (1, 0, 2)


@dataclass(frozen=True)
class RepTypeVerdict:
    kind: str
    evidence: str
    components: tuple[ComponentClass, ...] | None = None
    notes: tuple[str, ...] = field(default=())

    def as_dict(self) -> dict:
        out = {"kind": self.kind, "evidence": self.evidence}
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _as_set(T) -> TripleSet:
    return T if isinstance(T, TripleSet) else triple_set(T)


def _is(T: TripleSet, *triples) -> bool:
    return T.canonical() == tuple(sorted(triples))


def _only_shape(T: TripleSet) -> bool:
    """All triples (d,1,0), or all (d,0,1); vacuous for an empty set."""
    shapes = {(t.m, t.n) for t in T}
    return shapes <= {(1, 0)} or shapes <= {(0, 1)}


def _kronecker_star(T0: Sequence[Triple], T1: TripleSet) -> bool:
    """Kronecker triples plus one-sided triples on the opposite vertex only."""
    cnt = T1.counter()
    kp, km = cnt.get(KRONECKER_PLUS, 0), cnt.get(KRONECKER_MINUS, 0)
    if sum(cnt.values()) != kp + km or kp > 1 or km > 1 or kp + km == 0:
        return False
    rest = TripleSet(tuple(T0))
    if any(not t.one_sided for t in rest):
        return False
    if kp and rest.S_minus:
        return False
    if km and rest.S_plus:
        return False
    return max(rest.S_minus, rest.S_plus) <= 4


SUPPLEMENT_NOTE = (
    "supplementary clause: a Kronecker component next to a Dynkin or Euclidean star "
    "is tame by the graph criterion but is absent from the literal case list"
)


def classify_munn(T, literal: bool = False) -> RepTypeVerdict:
    """Case analysis on T = T_0 + T_1 (T_0 = triples (d,1,0) and (d,0,1))."""
    T = _as_set(T)
    T0, T1 = T.T0, T.T1
    Sm, Sp = T0.S_minus, T0.S_plus
    if not T1 and max(Sm, Sp) <= 3:
        return RepTypeVerdict(FINITE, "munn-1a")
    if _is(T1, (1, 1, 1)) and T0.S <= 3 and max(Sm, Sp) <= 2:
        return RepTypeVerdict(FINITE, "munn-1b")
    if not T0 and any(
        _is(T, *s) for s in (((1, 1, 1), (1, 1, 1)), ((2, 1, 1),), (KRONECKER_PLUS,), (KRONECKER_MINUS,))
    ):
        return RepTypeVerdict(TAME, "munn-2a")
    if not T1 and max(Sm, Sp) == 4:
        return RepTypeVerdict(TAME, "munn-2b")
    if _is(T1, (1, 1, 1)) and Sm == Sp == 2:
        return RepTypeVerdict(TAME, "munn-2c")
    if not literal and _kronecker_star(T0.triples, T1):
        return RepTypeVerdict(TAME, "munn-2a+", notes=(SUPPLEMENT_NOTE,))
    return RepTypeVerdict(WILD, "munn-3")


def classify_rees(T, group_order: int, literal: bool = False) -> RepTypeVerdict:
    """Case analysis for a single Rees semigroup over a group of the given order."""
    T = _as_set(T)
    if not literal and not T:
        return RepTypeVerdict(
            FINITE, "rees-semisimple", notes=("empty triple set: the algebra is semisimple",)
        )
    if _is(T, (1, 1, 1)):
        return RepTypeVerdict(FINITE, "rees-1a")
    if group_order <= 3 and _only_shape(T):
        return RepTypeVerdict(FINITE, "rees-1b")
    if _is(T, (1, 1, 1), (1, 1, 1)) or _is(T, (2, 1, 1)):
        return RepTypeVerdict(TAME, "rees-2a")
    if group_order == 4 and _only_shape(T):
        return RepTypeVerdict(TAME, "rees-2b")
    if group_order == 1 and (_is(T, KRONECKER_PLUS) or _is(T, KRONECKER_MINUS)):
        return RepTypeVerdict(TAME, "rees-2c")
    return RepTypeVerdict(WILD, "rees-3")


def classify_union(U: UnionData, literal: bool = False) -> RepTypeVerdict:
    """Case analysis over (T_>, T_<, T_0, T_1) for a union of Rees semigroups."""
    T0, T1 = U.T0, U.T1
    gt, lt = U.T_gt, U.T_lt
    one_sided = all(t.one_sided for t in T0)
    if not T1 and max(gt, lt) <= 3 and one_sided:
        return RepTypeVerdict(FINITE, "union-1a")
    if _is(T1, (1, 1, 1)) and gt + lt <= 3 and max(gt, lt) <= 2 and one_sided:
        return RepTypeVerdict(FINITE, "union-1b")
    if not T1 and max(gt, lt) == 4 and one_sided:
        return RepTypeVerdict(TAME, "union-2a")
    if _is(T1, (1, 1, 1)) and gt == lt == 2 and one_sided:
        return RepTypeVerdict(TAME, "union-2b")
    if not T0 and (_is(T1, (1, 1, 1), (1, 1, 1)) or _is(T1, (2, 1, 1))):
        return RepTypeVerdict(TAME, "union-2c")
    if not T1 and (_is(T0, KRONECKER_PLUS) or _is(T0, KRONECKER_MINUS)):
        return RepTypeVerdict(TAME, "union-2d")
    if not literal and not T1:
        kron = TripleSet(tuple(t for t in T0 if tuple(t) in (KRONECKER_PLUS, KRONECKER_MINUS)))
        rest = [t for t in T0 if tuple(t) not in (KRONECKER_PLUS, KRONECKER_MINUS)]
        if _kronecker_star(rest, kron):
            return RepTypeVerdict(TAME, "union-2d+", notes=(SUPPLEMENT_NOTE,))
    return RepTypeVerdict(WILD, "union-3")


@lru_cache(maxsize=1 << 16)
def _graph_kind_cached(canonical: tuple[tuple[int, int, int], ...]) -> str:
    return graph_kind(classify_components(graph_from_triples(canonical)))


def graph_verdict_kind(T) -> str:
    """Graph-criterion kind only, memoized on the multiset."""
    return _graph_kind_cached(_as_set(T).canonical())


def classify_by_graph(T) -> RepTypeVerdict:
    """Finite iff all components Dynkin; Tame iff additionally some Euclidean."""
    T = _as_set(T)
    classes = tuple(classify_components(graph_from_triples(T)))
    return RepTypeVerdict(graph_kind(classes), "graph", classes)


@dataclass(frozen=True)
class Verdicts:
    theorem: RepTypeVerdict
    graph: RepTypeVerdict
    munn: RepTypeVerdict | None = None

    @property
    def agree(self) -> bool:
        kinds = {self.theorem.kind, self.graph.kind}
        if self.munn is not None:
            kinds.add(self.munn.kind)
        return len(kinds) == 1


def check_agreement(v: Verdicts, context: str = "") -> Verdicts:
    if not v.agree:
        detail = f"theorem {v.theorem.kind} ({v.theorem.evidence}) vs graph {v.graph.kind}"
        if v.munn is not None:
            detail += f" vs munn {v.munn.kind} ({v.munn.evidence})"
        raise ClassifierDisagreement(f"classifiers disagree{': ' + context if context else ''}: {detail}")
    return v


def verdicts_for_munn(T) -> Verdicts:
    T = _as_set(T)
    return Verdicts(classify_munn(T), classify_by_graph(T))


def verdicts_for_rees(T, group_order: int, P: int, Q: int) -> Verdicts:
    T = _as_set(T)
    return Verdicts(classify_rees(T, group_order), classify_by_graph(T), classify_munn(T))


def verdicts_for_union(U: UnionData) -> Verdicts:
    T = U.all_triples
    return Verdicts(classify_union(U), classify_by_graph(T), classify_munn(T))


def union_of_one(T, group_order: int, P: int, Q: int) -> RepTypeVerdict:
    return classify_union(single_part_union(_as_set(T), group_order, P, Q))


# -- exhaustive families ----------------------------------------------------------


def triple_atoms(max_weight: int, max_d: int) -> list[tuple[int, int, int]]:
    """All triples (d, m, n) with d <= max_d and weight d (m + n) <= max_weight."""
    return [
        (d, m, n)
        for d in range(1, max_d + 1)
        for m in range(max_weight + 1)
        for n in range(max_weight + 1)
        if (m, n) != (0, 0) and d * (m + n) <= max_weight
    ]


def triple_sets_up_to(max_weight: int = 8, max_d: int = 4) -> list[tuple[tuple[int, int, int], ...]]:
    """Every multiset of triples with total weight sum d (m + n) <= max_weight.

    Includes the empty set; each multiset appears once, in sorted order.
    """
    atoms = triple_atoms(max_weight, max_d)
    weights = [d * (m + n) for d, m, n in atoms]
    out: list[tuple[tuple[int, int, int], ...]] = []
    cur: list[tuple[int, int, int]] = []

    def rec(i: int, w: int) -> None:
        out.append(tuple(cur))
        for j in range(i, len(atoms)):
            if w + weights[j] <= max_weight:
                cur.append(atoms[j])
                rec(j, w + weights[j])
                cur.pop()

    rec(0, 0)
    return out
