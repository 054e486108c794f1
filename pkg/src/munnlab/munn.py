"""Rees matrix semigroups, triple extraction and Munn algebra normal forms.

A Rees semigroup over G with a P x Q sandwich has elements that are Q x P
matrices over G^0 with at most one nonzero entry; ``a . b = a mu b``.
Sandwich entries are group element indices, or ``None`` for the zero of G^0.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import EmptyUnion, InternalInvariantViolation, InvalidInput
from .exact_linalg.field import Field
from .exact_linalg.matrix import Matrix, inverse, rank_normal_form
from .group_algebra import (
    WedderburnComponent,
    WedderburnData,
    as_algebra_grid,
    component_matrix,
    component_rank,
    group_algebra_field,
    wedderburn,
)
from .groups import FiniteGroup


@dataclass(frozen=True, order=True)
class Triple:
    """Component data (d, m, n) of a Munn algebra M(F, m, n) with dim F = d."""

    d: int
    m: int
    n: int

    def __post_init__(self):
        for v in (self.d, self.m, self.n):
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
                raise InvalidInput(f"triple entries must be integers, got {v!r}")
        if self.d < 1 or self.m < 0 or self.n < 0:
            raise InvalidInput(f"invalid triple {tuple(self)}")
        if self.m == 0 and self.n == 0:
            raise InvalidInput("triples with m = n = 0 are trivial components and are dropped")

    def __iter__(self) -> Iterator[int]:
        return iter((self.d, self.m, self.n))

    def __repr__(self) -> str:
        return f"({self.d},{self.m},{self.n})"

    @property
    def one_sided(self) -> bool:
        """Shape (d,1,0) or (d,0,1)."""
        return (self.m, self.n) in ((1, 0), (0, 1))


@dataclass(frozen=True)
class Provenance:
    component: int
    r: int
    c: int


@dataclass(frozen=True, eq=False)
class TripleSet:
    """A multiset of triples; equality ignores order.

    ``provenance`` optionally records, per triple, the Wedderburn component
    it came from.
    """

    triples: tuple[Triple, ...] = ()
    provenance: tuple[Provenance, ...] | None = None

    def __post_init__(self):
        ts = tuple(t if isinstance(t, Triple) else Triple(*t) for t in self.triples)
        object.__setattr__(self, "triples", ts)
        if self.provenance is not None and len(self.provenance) != len(ts):
            raise InvalidInput("provenance must have one entry per triple")

    @classmethod
    def of(cls, *triples) -> "TripleSet":
        return cls(tuple(triples))

    def __iter__(self) -> Iterator[Triple]:
        return iter(self.triples)

    def __len__(self) -> int:
        return len(self.triples)

    def __bool__(self) -> bool:
        return bool(self.triples)

    def canonical(self) -> tuple[tuple[int, int, int], ...]:
        return tuple(sorted(tuple(t) for t in self.triples))

    def __eq__(self, other) -> bool:
        if isinstance(other, TripleSet):
            return self.canonical() == other.canonical()
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.canonical())

    def __repr__(self) -> str:
        return "{" + ",".join(repr(t) for t in self.triples) + "}"

    def __add__(self, other: "TripleSet") -> "TripleSet":
        return TripleSet(self.triples + other.triples)

    def counter(self) -> Counter:
        return Counter(self.canonical())

    # T_0 collects the one-sided triples, T_1 the rest
    @property
    def T0(self) -> "TripleSet":
        return TripleSet(tuple(t for t in self.triples if t.one_sided))

    @property
    def T1(self) -> "TripleSet":
        return TripleSet(tuple(t for t in self.triples if not t.one_sided))

    @property
    def S_minus(self) -> int:
        return sum(t.d for t in self.triples if (t.m, t.n) == (1, 0))

    @property
    def S_plus(self) -> int:
        return sum(t.d for t in self.triples if (t.m, t.n) == (0, 1))

    @property
    def S(self) -> int:
        return self.S_minus + self.S_plus


def triple_set(items: Iterable) -> TripleSet:
    """Direct constructor from (d, m, n) tuples, for non-semigroup inputs."""
    return TripleSet(tuple(Triple(*map(int, t)) for t in items))


def has_unit(T: TripleSet) -> bool:
    """A Munn algebra over a semisimple base is unital iff no triple survives."""
    return len(T) == 0


# -- Rees semigroups ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ReesSemigroup:
    group: FiniteGroup
    P: int
    Q: int
    sandwich: tuple[tuple[int | None, ...], ...]

    @property
    def order(self) -> int:
        return self.P * self.Q * self.group.order + 1

    def __repr__(self) -> str:
        G = self.group
        rows = [[("0" if x is None else G.labels[x]) for x in row] for row in self.sandwich]
        return f"ReesSemigroup({G.name}, {self.P}x{self.Q}, {rows})"


def _entry(G: FiniteGroup, x) -> int | None:
    if x is None:
        return None
    if isinstance(x, str):
        return None if x.strip() == "0" else G.element(x)
    if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
        raise InvalidInput(f"bad sandwich entry {x!r}")
    if not 0 <= int(x) < G.order:
        raise InvalidInput(f"sandwich entry {x} is not an element index")
    return int(x)


def rees_make(G: FiniteGroup, P: int, Q: int, sandwich) -> ReesSemigroup:
    """Validate a P x Q sandwich over G^0.

    Entries may be element indices, labels, ``"#i"`` tokens, or ``None`` /
    ``"0"`` for zero.  An identically zero sandwich is rejected.
    """
    if P < 1 or Q < 1:
        raise InvalidInput("sandwich dimensions must be positive")
    rows = [list(r) for r in sandwich]
    if len(rows) != P or any(len(r) != Q for r in rows):
        raise InvalidInput(f"sandwich must be {P} x {Q}")
    grid = tuple(tuple(_entry(G, x) for x in r) for r in rows)
    if all(x is None for r in grid for x in r):
        raise InvalidInput("the sandwich matrix is zero; the semigroup has zero multiplication")
    return ReesSemigroup(G, P, Q, grid)


@dataclass(frozen=True)
class ReesElement:
    """Zero (``g is None``) or the Q x P matrix with g at (row, col)."""

    row: int = 0
    col: int = 0
    g: int | None = None

    @property
    def is_zero(self) -> bool:
        return self.g is None


ZERO = ReesElement()


def rees_elements(S: ReesSemigroup) -> list[ReesElement]:
    out = [ZERO]
    for i in range(S.Q):
        for j in range(S.P):
            for g in range(S.group.order):
                out.append(ReesElement(i, j, g))
    return out


def rees_mul(S: ReesSemigroup, a: ReesElement, b: ReesElement) -> ReesElement:
    if a.is_zero or b.is_zero:
        return ZERO
    for x in (a, b):
        if not (0 <= x.row < S.Q and 0 <= x.col < S.P and 0 <= x.g < S.group.order):
            raise InvalidInput("element indices out of range")
    mid = S.sandwich[a.col][b.row]
    if mid is None:
        return ZERO
    G = S.group
    return ReesElement(a.row, b.col, G.mul(G.mul(a.g, mid), b.g))


def is_zero_simple(S: ReesSemigroup) -> bool:
    """Every row and every column of the sandwich has a nonzero entry."""
    rows_ok = all(any(x is not None for x in r) for r in S.sandwich)
    cols_ok = all(any(r[j] is not None for r in S.sandwich) for j in range(S.Q))
    return rows_ok and cols_ok


# -- triples ------------------------------------------------------------------


def _wedderburn_for(S: ReesSemigroup, field: Field | int, seed: int) -> WedderburnData:
    char = field if isinstance(field, int) else field.char
    return wedderburn(S.group, group_algebra_field(S.group, char), seed)


def triples(
    S: ReesSemigroup,
    field: Field | int,
    seed: int = 0,
    wd: WedderburnData | None = None,
) -> TripleSet:
    """The triple set (d_k, m_k, n_k) with m_k = P c_k - r_k, n_k = Q c_k - r_k."""
    wd = wd or _wedderburn_for(S, field, seed)
    ranks = [component_rank(S.sandwich, comp) for comp in wd]
    return _assemble(S.P, S.Q, wd, ranks)


def _assemble(P: int, Q: int, wd: WedderburnData, ranks: Sequence[int]) -> TripleSet:
    out, prov = [], []
    for k, (comp, r) in enumerate(zip(wd, ranks)):
        m, n = P * comp.c - r, Q * comp.c - r
        if m < 0 or n < 0:
            raise InternalInvariantViolation("component rank exceeds the sandwich size")
        if m - n != (P - Q) * comp.c:
            raise InternalInvariantViolation("m_k - n_k differs from (P - Q) c_k")
        if (m, n) != (0, 0):
            out.append(Triple(comp.d, m, n))
            prov.append(Provenance(k, r, comp.c))
    return TripleSet(tuple(out), tuple(prov))


class TripleExtractor:
    """Memoized triple extraction for many sandwiches over one group.

    Component ranks are invariant under permuting sandwich rows and columns,
    so results are cached on a permutation-canonical key.
    """

    def __init__(self, G: FiniteGroup, field: Field | int, seed: int = 0):
        char = field if isinstance(field, int) else field.char
        self.group = G
        self.wd = wedderburn(G, group_algebra_field(G, char), seed)
        self._cache: dict[tuple, TripleSet] = {}

    @staticmethod
    def canonical_key(grid: Sequence[Sequence[int | None]]) -> tuple:
        code = [[-1 if x is None else x for x in row] for row in grid]
        P, Q = len(code), len(code[0])
        best = None
        for rp in itertools.permutations(range(P)):
            rows = [code[i] for i in rp]
            for cp in itertools.permutations(range(Q)):
                key = tuple(tuple(r[j] for j in cp) for r in rows)
                if best is None or key < best:
                    best = key
        return best

    def __call__(self, grid: Sequence[Sequence[int | None]]) -> TripleSet:
        key = self.canonical_key(grid)
        hit = self._cache.get(key)
        if hit is None:
            P, Q = len(grid), len(grid[0])
            ranks = [component_rank(grid, comp) for comp in self.wd]
            hit = _assemble(P, Q, self.wd, ranks)
            self._cache[key] = hit
        return hit


# -- normal form --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class NormalForm:
    """T mu_k U = [[I_r, 0], [0, 0]] over F_k, with T and U invertible."""

    component: WedderburnComponent
    r: int
    mu_k: Matrix
    row_transform: Matrix
    col_transform: Matrix

    @property
    def block_identity(self) -> Matrix:
        return _block_identity(self.mu_k.field, self.mu_k.rows, self.mu_k.cols, self.r)

    @property
    def theta(self) -> Matrix:
        """A regularizing theta with mu_k theta mu_k = mu_k."""
        E = _block_identity(self.mu_k.field, self.mu_k.cols, self.mu_k.rows, self.r)
        return self.col_transform @ E @ self.row_transform

    def check(self) -> None:
        if self.row_transform @ self.mu_k @ self.col_transform != self.block_identity:
            raise InternalInvariantViolation("normal form identity fails")
        mu = self.mu_k
        if mu @ self.theta @ mu != mu:
            raise InternalInvariantViolation("mu theta mu != mu")
        inverse(self.row_transform)
        inverse(self.col_transform)


def _block_identity(field: Field, rows: int, cols: int, r: int) -> Matrix:
    arr = np.zeros((rows, cols), dtype=np.int64)
    arr[np.arange(r), np.arange(r)] = 1
    return Matrix._wrap(field, arr)


def normal_form(
    S: ReesSemigroup,
    field: Field | int,
    comp: WedderburnComponent | int,
    seed: int = 0,
) -> NormalForm:
    """Rank normal form of the component projection mu_k over F_k.

    ``comp`` may be a component or its index in the canonical ordering.
    """
    if isinstance(comp, int):
        comp = _wedderburn_for(S, field, seed)[comp]
    mu_k = component_matrix(S.sandwich, comp)
    r, T, U = rank_normal_form(mu_k)
    nf = NormalForm(comp, r, mu_k, T, U)
    nf.check()
    return nf


def matrix_normal_form(mu_k: Matrix, comp: WedderburnComponent | None = None) -> NormalForm:
    """Normal form of an explicit matrix over F_k."""
    r, T, U = rank_normal_form(mu_k)
    nf = NormalForm(comp, r, mu_k, T, U)
    nf.check()
    return nf


# -- elementary transformations -----------------------------------------------


def transform_sandwich(S: ReesSemigroup, op: str, index: int, arg: int | None = None) -> ReesSemigroup:
    """Apply an elementary transformation to the sandwich.

    ``op`` is one of ``swap_rows``/``swap_cols`` (with ``arg`` the other
    index), ``left_row`` (left-multiply row ``index`` by element ``arg``) or
    ``right_col`` (right-multiply column ``index`` by ``arg``).
    """
    G = S.group
    grid = [list(r) for r in S.sandwich]
    if op == "swap_rows":
        grid[index], grid[arg] = grid[arg], grid[index]
    elif op == "swap_cols":
        for r in grid:
            r[index], r[arg] = r[arg], r[index]
    elif op == "left_row":
        grid[index] = [None if x is None else G.mul(arg, x) for x in grid[index]]
    elif op == "right_col":
        for r in grid:
            if r[index] is not None:
                r[index] = G.mul(r[index], arg)
    else:
        raise InvalidInput(f"unknown transformation {op!r}")
    return ReesSemigroup(G, S.P, S.Q, tuple(tuple(r) for r in grid))


# -- unions -------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class UnionPart:
    semigroup: ReesSemigroup | None
    triples: TripleSet
    group_order: int
    sign: int  # sign of P - Q


@dataclass(frozen=True, eq=False)
class UnionData:
    parts: tuple[UnionPart, ...]
    T_gt: int
    T_lt: int
    T0: TripleSet
    T1: TripleSet = dc_field(default_factory=TripleSet)

    @property
    def all_triples(self) -> TripleSet:
        return self.T0 + self.T1


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def union_from_parts(parts: Sequence[UnionPart]) -> UnionData:
    if not parts:
        raise EmptyUnion("a union needs at least one part")
    T_gt = sum(p.group_order for p in parts if p.sign > 0)
    T_lt = sum(p.group_order for p in parts if p.sign < 0)
    T0 = TripleSet(tuple(t for p in parts if p.sign != 0 for t in p.triples))
    T1 = TripleSet(tuple(t for p in parts if p.sign == 0 for t in p.triples))
    return UnionData(tuple(parts), T_gt, T_lt, T0, T1)


def union_data(parts: Sequence[tuple[ReesSemigroup, Field | int]], seed: int = 0) -> UnionData:
    """Union of pairwise annihilating Rees semigroups.

    The sign of m_k - n_k is the sign of P - Q for every component, so each
    part is placed in T_0 or T_1 as a whole.
    """
    if not parts:
        raise EmptyUnion("a union needs at least one part")
    out = []
    for S, field in parts:
        T = triples(S, field, seed)
        sign = _sign(S.P - S.Q)
        if any(_sign(t.m - t.n) != sign for t in T):
            raise InternalInvariantViolation("a part mixes signs of m_k - n_k")
        out.append(UnionPart(S, T, S.group.order, sign))
    return union_from_parts(out)


def single_part_union(T: TripleSet, group_order: int, P: int, Q: int) -> UnionData:
    return union_from_parts([UnionPart(None, T, group_order, _sign(P - Q))])
