"""Finite groups stored as validated Cayley tables.

Built-in constructors and their element orderings:

* ``cyclic(n)``: element ``i`` is ``g^i``; labels ``e, g, g2, ...``.
* ``dihedral(n)``: order ``2n``; ``r^i s^j`` sits at index ``i + n*j`` with
  ``s r s = r^-1``; labels ``e, r, r2, ..., s, rs, r2s, ...``.
* ``symmetric(n)`` (``n <= 5``): permutations of ``1..n`` in lexicographic
  order of their images, composed right-to-left (``(st)(i) = s(t(i))``);
  labels in cycle notation.
* ``direct_product(A, B)``: the pair ``(a, b)`` sits at index ``a*|B| + b``.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import InvalidGroup, InvalidInput

DEFAULT_MAX_ORDER = 64


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given extensionally by its multiplication table."""

    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    labels: tuple[str, ...]
    name: str = "group"
    gens: tuple[int, ...] = field(default=())

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        out = self.identity
        for _ in range(k):
            out = self.table[out][a]
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.table, dtype=np.int64).reshape(self.order, self.order)
        arr.setflags(write=False)
        return arr

    @cached_property
    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        """Classes by orbit scan, ordered by their smallest element."""
        seen: set[int] = set()
        out = []
        for a in range(self.order):
            if a in seen:
                continue
            cls = sorted({self.table[self.table[g][a]][self.inverse[g]] for g in range(self.order)})
            seen.update(cls)
            out.append(tuple(cls))
        return tuple(out)

    @property
    def generators(self) -> tuple[int, ...]:
        """Generating set; constructors record a documented one."""
        if self.gens:
            return self.gens
        return _greedy_generators(self)

    @property
    def first_generator(self) -> int:
        gens = self.generators
        return gens[0] if gens else self.identity

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.array, self.array.T))

    def element(self, token: str) -> int:
        """Resolve a label or ``#i`` index token to an element index."""
        token = token.strip()
        if token.startswith("#"):
            try:
                i = int(token[1:])
            except ValueError:
                raise InvalidInput(f"bad element token {token!r}") from None
            if not 0 <= i < self.order:
                raise InvalidInput(f"element index {i} out of range for order {self.order}")
            return i
        try:
            return self.labels.index(token)
        except ValueError:
            raise InvalidInput(f"unknown element label {token!r} in {self.name}") from None


def _greedy_generators(G: FiniteGroup) -> tuple[int, ...]:
    gens: list[int] = []
    span = {G.identity}
    for a in range(G.order):
        if a in span:
            continue
        gens.append(a)
        frontier = list(span)
        span = set(span)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = G.table[x][g]
                    if y not in span:
                        span.add(y)
                        nxt.append(y)
            frontier = nxt
        if len(span) == G.order:
            break
    return tuple(gens)


def group_from_table(
    table: Sequence[Sequence[int]],
    labels: Sequence[str] | None = None,
    name: str = "table",
    max_order: int = DEFAULT_MAX_ORDER,
    gens: Sequence[int] = (),
) -> FiniteGroup:
    """Validate a Cayley table and locate identity and inverses.

    Raises InvalidGroup with a witness when the table is not a group table.
    """
    n = len(table)
    if n == 0:
        raise InvalidGroup("empty table")
    if n > max_order:
        raise InvalidInput(f"group order {n} exceeds the cap {max_order}")
    rows = []
    for i, row in enumerate(table):
        if len(row) != n:
            raise InvalidGroup(f"row {i} has length {len(row)}, expected {n}", (i,))
        r = []
        for x in row:
            if isinstance(x, bool) or int(x) != x or not 0 <= int(x) < n:
                raise InvalidGroup(f"entry {x!r} in row {i} is not an index in 0..{n - 1}", (i,))
            r.append(int(x))
        rows.append(tuple(r))
    arr = np.array(rows, dtype=np.int64)
    full = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(arr[i]), full):
            raise InvalidGroup(f"row {i} is not a permutation", (i,))
        if not np.array_equal(np.sort(arr[:, i]), full):
            raise InvalidGroup(f"column {i} is not a permutation", (i,))
    # associativity: (ab)c == a(bc) for all triples, vectorized over (a, b)
    left = arr[arr]  # left[a, b, c] = (ab)c
    right = arr[:, arr]  # right[a, b, c] = a(bc)
    bad = np.argwhere(left != right)
    if bad.size:
        a, b, c = (int(v) for v in bad[0])
        raise InvalidGroup(f"not associative at ({a}, {b}, {c})", (a, b, c))
    ident = [e for e in range(n) if np.array_equal(arr[e], full) and np.array_equal(arr[:, e], full)]
    if not ident:
        raise InvalidGroup("no identity element")
    e = ident[0]
    inverse = tuple(int(np.flatnonzero(arr[a] == e)[0]) for a in range(n))
    for a in range(n):
        if rows[inverse[a]][a] != e:
            raise InvalidGroup(f"element {a} has no two-sided inverse", (a,))
    if labels is None:
        labels = ["e" if a == e else f"#{a}" for a in range(n)]
    labels = tuple(str(s) for s in labels)
    if len(labels) != n or len(set(labels)) != n:
        raise InvalidInput("labels must be distinct and one per element")
    if "0" in labels:
        raise InvalidInput('the label "0" is reserved for the zero of G^0')
    return FiniteGroup(tuple(rows), e, inverse, labels, name, tuple(gens))


# -- built-in constructors ---------------------------------------------------


def cyclic(n: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    if n < 1:
        raise InvalidInput("cyclic(n) needs n >= 1")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    labels = ["e", "g"] + [f"g{i}" for i in range(2, n)]
    return group_from_table(
        table, labels[:n], f"cyclic({n})", max_order=max_order, gens=(1,) if n > 1 else ()
    )


def dihedral(n: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    if n < 1:
        raise InvalidInput("dihedral(n) needs n >= 1")

    def idx(i: int, j: int) -> int:
        return (i % n) + n * (j % 2)

    table = []
    for a in range(2 * n):
        ai, aj = a % n, a // n
        row = []
        for b in range(2 * n):
            bi, bj = b % n, b // n
            row.append(idx(ai + (-bi if aj else bi), aj + bj))
        table.append(row)

    def rlabel(i: int) -> str:
        return "" if i == 0 else ("r" if i == 1 else f"r{i}")

    labels = [rlabel(i) or "e" for i in range(n)] + [rlabel(i) + "s" for i in range(n)]
    gens = (1, n) if n > 1 else (n,)
    return group_from_table(table, labels, f"dihedral({n})", max_order=max_order, gens=gens)


def _cycle_label(perm: tuple[int, ...]) -> str:
    seen = set()
    cycles = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = perm[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = perm[x]
        cycles.append("(" + " ".join(str(i + 1) for i in cyc) + ")")
    return "".join(cycles) or "e"


def symmetric(n: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    if not 1 <= n <= 5:
        raise InvalidInput("symmetric(n) is built in for 1 <= n <= 5")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(s[t[i]] for i in range(n))] for t in perms] for s in perms]
    labels = [_cycle_label(p) for p in perms]
    gens: tuple[int, ...] = ()
    if n > 1:
        ncycle = tuple((i + 1) % n for i in range(n))
        transposition = tuple([1, 0] + list(range(2, n)))
        gens = (index[ncycle], index[transposition]) if n > 2 else (index[ncycle],)
    return group_from_table(table, labels, f"symmetric({n})", max_order=max_order, gens=gens)


def direct_product(A: FiniteGroup, B: FiniteGroup, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    na, nb = A.order, B.order
    if na * nb > max_order:
        raise InvalidInput(f"group order {na * nb} exceeds the cap {max_order}")
    table = [
        [A.table[a1][a2] * nb + B.table[b1][b2] for a2 in range(na) for b2 in range(nb)]
        for a1 in range(na)
        for b1 in range(nb)
    ]
    labels = [f"({A.labels[a]},{B.labels[b]})" for a in range(na) for b in range(nb)]
    labels[A.identity * nb + B.identity] = "e"
    gens = tuple(g * nb + B.identity for g in A.generators) + tuple(
        A.identity * nb + g for g in B.generators
    )
    return group_from_table(
        table, labels, f"direct_product({A.name}, {B.name})", max_order=max_order, gens=gens
    )


_CALL = re.compile(r"^\s*([a-z_]+)\s*\((.*)\)\s*$", re.S)


def _split_args(body: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in body:
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    if cur.strip():
        out.append(cur)
    return [s.strip() for s in out]


def group_builtin(spec, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Build a named group from ``"cyclic(3)"``-style text or nested tuples.

    Accepted forms: ``cyclic(n)``, ``dihedral(n)``, ``symmetric(n)`` with
    ``n <= 5``, and ``direct_product(spec, spec)``.
    """
    if isinstance(spec, str):
        m = _CALL.match(spec)
        if not m:
            raise InvalidInput(f"unsupported group spec {spec!r}")
        kind, args = m.group(1), _split_args(m.group(2))
    elif isinstance(spec, (tuple, list)) and spec:
        kind, args = spec[0], list(spec[1:])
    else:
        raise InvalidInput(f"unsupported group spec {spec!r}")
    if kind == "direct_product":
        if len(args) != 2:
            raise InvalidInput("direct_product takes two group specs")
        return direct_product(group_builtin(args[0], max_order), group_builtin(args[1], max_order), max_order)
    if kind not in ("cyclic", "dihedral", "symmetric") or len(args) != 1:
        raise InvalidInput(f"unsupported group spec {spec!r}")
    try:
        n = int(args[0])
    except (TypeError, ValueError):
        raise InvalidInput(f"bad size argument in {spec!r}") from None
    order = {"cyclic": n, "dihedral": 2 * n, "symmetric": math.factorial(max(n, 0))}[kind]
    if order > max_order:
        raise InvalidInput(f"group order {order} exceeds the cap {max_order}")
    return {"cyclic": cyclic, "dihedral": dihedral, "symmetric": symmetric}[kind](n, max_order)


def exponent(G: FiniteGroup) -> int:
    """Least common multiple of the element orders."""
    out = 1
    for a in range(G.order):
        out = math.lcm(out, G.element_order(a))
    return out


def catalog(max_order: int = 12) -> list[str]:
    """Built-in group specs of order at most ``max_order``, small to large."""
    specs: list[tuple[int, str]] = []
    for n in range(1, max_order + 1):
        specs.append((n, f"cyclic({n})"))
    for n in range(2, max_order // 2 + 1):
        specs.append((2 * n, f"dihedral({n})"))
    for n in (3, 4, 5):
        if math.factorial(n) <= max_order:
            specs.append((math.factorial(n), f"symmetric({n})"))
    products = [
        "direct_product(cyclic(2), cyclic(2))",
        "direct_product(cyclic(2), cyclic(4))",
        "direct_product(cyclic(3), cyclic(3))",
        "direct_product(cyclic(2), direct_product(cyclic(2), cyclic(2)))",
        "direct_product(cyclic(2), cyclic(6))",
        "direct_product(cyclic(2), symmetric(3))",
        "direct_product(cyclic(2), dihedral(4))",
        "direct_product(cyclic(3), symmetric(3))",
    ]
    for p in products:
        specs.append((group_builtin(p).order, p))
    return [s for o, s in sorted(specs, key=lambda t: t[0]) if o <= max_order]
