"""Valued graphs built from triple sets, and their Dynkin/Euclidean classification.

Vertices are ordered ``+``, ``-``, ``k1``, ..., ``ks`` (one per triple, in
triple order).  A triple (d, m, n) gives vertex k the weight f_k = d, an edge
k -> + valued (m, m*d) when m > 0, and an edge - -> k valued (n*d, n) when
n > 0.  The Cartan matrix has C_ii = 2 and C_ij = -d_ij; ``diag(f) C`` is
symmetric.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import SymmetryViolation
from .munn import TripleSet, triple_set

PLUS, MINUS = "+", "-"
DYNKIN, EUCLIDEAN, INDEFINITE = "Dynkin", "Euclidean", "Indefinite"
DEFAULT_ROOT_CAP = 64


@dataclass(frozen=True)
class Edge:
    """Edge tail -> head with valuation (d_tail_head, d_head_tail)."""

    tail: int
    head: int
    d_th: int
    d_ht: int


@dataclass(frozen=True)
class ValuedGraph:
    vertices: tuple[str, ...]
    f: tuple[int, ...]
    edges: tuple[Edge, ...]

    @property
    def size(self) -> int:
        return len(self.vertices)

    def valuation(self, i: int, j: int) -> int:
        """d_ij, zero when i and j are not adjacent."""
        for e in self.edges:
            if (e.tail, e.head) == (i, j):
                return e.d_th
            if (e.tail, e.head) == (j, i):
                return e.d_ht
        return 0

    def neighbours(self, i: int) -> list[int]:
        out = []
        for e in self.edges:
            if e.tail == i:
                out.append(e.head)
            elif e.head == i:
                out.append(e.tail)
        return sorted(out)

    def check_symmetry(self) -> None:
        seen = set()
        for e in self.edges:
            if e.tail == e.head:
                raise SymmetryViolation(f"loop at vertex {self.vertices[e.tail]}")
            pair = frozenset((e.tail, e.head))
            if pair in seen:
                raise SymmetryViolation("more than one edge between a vertex pair")
            seen.add(pair)
            if e.d_th <= 0 or e.d_ht <= 0:
                raise SymmetryViolation("edge valuations must be positive")
            if e.d_th * self.f[e.tail] != e.d_ht * self.f[e.head]:
                raise SymmetryViolation(
                    f"d_ij f_i != d_ji f_j on edge {self.vertices[e.tail]}-{self.vertices[e.head]}"
                )

    def relabel(self, perm: Sequence[int]) -> "ValuedGraph":
        """Move vertex i to position perm[i]."""
        n = self.size
        verts = [""] * n
        f = [0] * n
        for i in range(n):
            verts[perm[i]] = self.vertices[i]
            f[perm[i]] = self.f[i]
        edges = tuple(Edge(perm[e.tail], perm[e.head], e.d_th, e.d_ht) for e in self.edges)
        return ValuedGraph(tuple(verts), tuple(f), edges)

    def reversed(self) -> "ValuedGraph":
        """Same valued graph with every orientation flipped."""
        return ValuedGraph(
            self.vertices, self.f, tuple(Edge(e.head, e.tail, e.d_ht, e.d_th) for e in self.edges)
        )


def graph_from_triples(T: TripleSet | Iterable) -> ValuedGraph:
    if not isinstance(T, TripleSet):
        T = triple_set(T)
    vertices = [PLUS, MINUS]
    f = [1, 1]
    edges = []
    for k, t in enumerate(T, start=1):
        idx = len(vertices)
        vertices.append(f"k{k}")
        f.append(t.d)
        if t.m > 0:
            edges.append(Edge(idx, 0, t.m, t.m * t.d))
        if t.n > 0:
            edges.append(Edge(1, idx, t.n * t.d, t.n))
    g = ValuedGraph(tuple(vertices), tuple(f), tuple(edges))
    g.check_symmetry()
    return g


def cartan_matrix(g: ValuedGraph) -> list[list[int]]:
    g.check_symmetry()
    n = g.size
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for e in g.edges:
        C[e.tail][e.head] = -e.d_th
        C[e.head][e.tail] = -e.d_ht
    for i in range(n):
        for j in range(n):
            if g.f[i] * C[i][j] != g.f[j] * C[j][i]:
                raise SymmetryViolation("diag(f) C is not symmetric")
    return C


def tits_form(g: ValuedGraph) -> list[list[Fraction]]:
    """Symmetric B with q(x) = x^T B x and 2B = diag(f) C."""
    C = cartan_matrix(g)
    return [[Fraction(g.f[i] * C[i][j], 2) for j in range(g.size)] for i in range(g.size)]


def quadratic_form(g: ValuedGraph, x: Sequence[int]) -> Fraction:
    B = tits_form(g)
    n = g.size
    return sum((B[i][j] * x[i] * x[j] for i in range(n) for j in range(n)), Fraction(0))


# -- exact rational helpers ---------------------------------------------------


def _positive_definite(A: list[list[Fraction]]) -> bool:
    """Sylvester's criterion via symmetric elimination (pivots = minor ratios)."""
    n = len(A)
    a = [row[:] for row in A]
    for k in range(n):
        if a[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            if a[i][k]:
                t = a[i][k] / a[k][k]
                for j in range(k, n):
                    a[i][j] -= t * a[k][j]
    return True


def _rational_kernel(A: list[list[Fraction]]) -> list[list[Fraction]]:
    n_rows = len(A)
    n = len(A[0]) if A else 0
    a = [row[:] for row in A]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(n_rows):
            if i != r and a[i][c] != 0:
                t = a[i][c]
                a[i] = [x - t * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fc]
        basis.append(v)
    return basis


def _primitive_integer(v: Sequence[Fraction]) -> tuple[int, ...]:
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    ints = [x // g for x in ints] if g else ints
    if ints and sum(ints) < 0:
        ints = [-x for x in ints]
    return tuple(ints)


# -- classification -----------------------------------------------------------


@dataclass(frozen=True)
class ComponentClass:
    vertices: tuple[int, ...]
    labels: tuple[str, ...]
    kind: str
    name: str | None = None
    null_root: tuple[int, ...] | None = None
    corank: int = 0

    def as_dict(self) -> dict:
        return {
            "vertices": list(self.labels),
            "kind": self.kind,
            "name": self.name,
            "null_root": None if self.null_root is None else list(self.null_root),
            "corank": self.corank,
        }


def connected_components(g: ValuedGraph) -> list[tuple[int, ...]]:
    seen: set[int] = set()
    out = []
    for s in range(g.size):
        if s in seen:
            continue
        comp = []
        queue = deque([s])
        seen.add(s)
        while queue:
            v = queue.popleft()
            comp.append(v)
            for w in g.neighbours(v):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        out.append(tuple(sorted(comp)))
    return out


def _classify_component(g: ValuedGraph, C: list[list[int]], verts: tuple[int, ...]) -> ComponentClass:
    A = [[Fraction(g.f[i] * C[i][j]) for j in verts] for i in verts]
    labels = tuple(g.vertices[i] for i in verts)
    if _positive_definite(A):
        kind, null_root, corank = DYNKIN, None, 0
    else:
        kernel = _rational_kernel(A)
        corank = len(kernel)
        kind, null_root = INDEFINITE, None
        if corank == 1:
            delta = _primitive_integer(kernel[0])
            deletions_pd = all(
                _positive_definite([[A[a][b] for b in range(len(verts)) if b != k] for a in range(len(verts)) if a != k])
                for k in range(len(verts))
            )
            if all(x > 0 for x in delta) and deletions_pd:
                kind, null_root = EUCLIDEAN, delta
    cls = ComponentClass(verts, labels, kind, None, null_root, corank)
    return ComponentClass(verts, labels, kind, dynkin_name(cls, g), null_root, corank)


def classify_components(g: ValuedGraph) -> list[ComponentClass]:
    C = cartan_matrix(g)
    return [_classify_component(g, C, comp) for comp in connected_components(g)]


def graph_kind(classes: Sequence[ComponentClass]) -> str:
    """Finite, Tame or Wild from the component classes."""
    kinds = {c.kind for c in classes}
    if INDEFINITE in kinds:
        return "Wild"
    if EUCLIDEAN in kinds:
        return "Tame"
    return "Finite"


# -- naming -------------------------------------------------------------------


def dynkin_name(c: ComponentClass, g: ValuedGraph) -> str | None:
    """Best-effort label from rank, valuations and branching; None if indefinite."""
    if c.kind == INDEFINITE:
        return None
    verts = set(c.vertices)
    n = len(verts)
    edges = [e for e in g.edges if e.tail in verts]
    if n == 1:
        return "A1"
    deg = {v: 0 for v in verts}
    for e in edges:
        deg[e.tail] += 1
        deg[e.head] += 1
    weight = {frozenset((e.tail, e.head)): e.d_th * e.d_ht for e in edges}
    heavy = [k for k, w in weight.items() if w > 1]
    is_tree = len(edges) == n - 1
    is_path = is_tree and max(deg.values()) <= 2
    ends = [v for v in verts if deg[v] == 1]

    def path_order() -> list[int]:
        order = [min(ends)]
        prev = None
        while len(order) < n:
            cur = order[-1]
            nxt = [w for w in g.neighbours(cur) if w != prev and w in verts]
            prev = cur
            order.append(nxt[0])
        return order

    def arms(center: int) -> list[int]:
        out = []
        for start in g.neighbours(center):
            length, prev, cur = 1, center, start
            while deg[cur] == 2:
                nxt = [w for w in g.neighbours(cur) if w != prev][0]
                prev, cur = cur, nxt
                length += 1
            out.append(length)
        return sorted(out)

    if c.kind == DYNKIN:
        if not heavy:
            if is_path:
                return f"A{n}"
            branch = [v for v in verts if deg[v] == 3]
            if len(branch) == 1:
                a = arms(branch[0])
                if a[:2] == [1, 1]:
                    return f"D{n}"
                return {(1, 2, 2): "E6", (1, 2, 3): "E7", (1, 2, 4): "E8"}.get(tuple(a), "unnamed")
            return "unnamed"
        if is_path and len(heavy) == 1:
            w = weight[heavy[0]]
            if w == 3 and n == 2:
                return "G2"
            if w == 2:
                order = path_order()
                pos = [i for i in range(n - 1) if frozenset(order[i : i + 2]) == heavy[0]][0]
                if n == 4 and pos == 1:
                    return "F4"
                if pos in (0, n - 2):
                    return f"B{n}"
        return "unnamed"
    # Euclidean
    if n == 2:
        e = edges[0]
        if (e.d_th, e.d_ht) == (2, 2):
            return "A~11"
        if {e.d_th, e.d_ht} == {1, 4}:
            return "A~12"
        return "unnamed"
    if not heavy:
        if not is_tree:
            return f"A~{n - 1}"
        branch = [v for v in verts if deg[v] >= 3]
        if len(branch) == 1 and deg[branch[0]] == 4:
            return "D~4"
        if len(branch) == 2:
            return f"D~{n - 1}"
        if len(branch) == 1:
            return {(2, 2, 2): "E~6", (1, 3, 3): "E~7", (1, 2, 5): "E~8"}.get(tuple(arms(branch[0])), "unnamed")
        return "unnamed"
    if is_path:
        order = path_order()
        ws = [weight[frozenset(order[i : i + 2])] for i in range(n - 1)]
        if n == 3 and sorted(ws) == [1, 3]:
            return "G~2"
        if ws[0] == 2 and ws[-1] == 2 and all(w == 1 for w in ws[1:-1]):
            return f"B~{n - 1}"
        if n == 5 and ws in ([1, 1, 2, 1], [1, 2, 1, 1]):
            return "F~4"
        return "unnamed"
    if is_tree and len(heavy) == 1 and weight[heavy[0]] == 2:
        branch = [v for v in verts if deg[v] == 3]
        if len(branch) == 1:
            return f"BD~{n - 1}"
    return "unnamed"


# -- roots ----------------------------------------------------------------------


@dataclass(frozen=True)
class RootSet:
    roots: tuple[tuple[int, ...], ...]
    truncated: bool
    cap: int

    def __len__(self) -> int:
        return len(self.roots)


def reflect(C: list[list[int]], i: int, x: Sequence[int]) -> tuple[int, ...]:
    """s_i(x) = x - (sum_j C_ij x_j) e_i."""
    y = list(x)
    y[i] -= sum(C[i][j] * x[j] for j in range(len(x)))
    return tuple(y)


def positive_real_roots(g: ValuedGraph, cap: int = DEFAULT_ROOT_CAP) -> RootSet:
    """Closure of the simple roots under simple reflections, positive part.

    Roots with coordinate sum above ``cap`` are not expanded; if any such
    root is met the result is marked truncated.
    """
    C = cartan_matrix(g)
    n = g.size
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    seen = set(simple)
    queue = deque(simple)
    truncated = False
    while queue:
        x = queue.popleft()
        for i in range(n):
            y = reflect(C, i, x)
            if any(v < 0 for v in y) or y in seen:
                continue
            if sum(y) > cap:
                truncated = True
                continue
            seen.add(y)
            queue.append(y)
    roots = tuple(sorted(seen, key=lambda r: (sum(r), tuple(-v for v in r))))
    return RootSet(roots, truncated, cap)


# -- DOT ----------------------------------------------------------------------


def to_dot(g: ValuedGraph, name: str = "valued_graph") -> str:
    """Byte-stable DOT: vertices in graph order, then edges in graph order."""
    lines = [f"digraph {name} {{", "  node [shape=circle];"]
    for v, f in zip(g.vertices, g.f):
        lines.append(f'  "{v}" [label="{v}\\nf={f}"];')
    for e in g.edges:
        lines.append(
            f'  "{g.vertices[e.tail]}" -> "{g.vertices[e.head]}" [label="({e.d_th},{e.d_ht})"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_as_dict(g: ValuedGraph, classes: Sequence[ComponentClass]) -> dict:
    return {
        "vertices": list(g.vertices),
        "weights": list(g.f),
        "edges": [
            {"tail": g.vertices[e.tail], "head": g.vertices[e.head], "valuation": [e.d_th, e.d_ht]}
            for e in g.edges
        ],
        "components": [c.as_dict() for c in classes],
    }
