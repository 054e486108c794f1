"""Modules over products of M(F_k, m_k, n_k) as diagrams, and graph representations.

A module is a k-space V_0 (k the prime field), an F_k-space V_k per triple,
maps alpha_{ki}: V_0 -> V_k (i < m_k) and beta_{kj}: V_k -> V_0 (j < n_k)
with every alpha o beta = 0.  Everything is stored over k: V_k has
k-dimension d_k * v_k with coordinates ordered (F_k-coordinate, power of x),
and F_k acts by the block-diagonal companion matrix of its modulus.

Graph representations keep the same map counts: ``alphas[k]`` holds the m_k
maps V_- -> V_k and ``betas[k]`` the n_k maps V_k -> V_+.  (Matching the
valued graph's edge counts needs the swap + <-> -, an isomorphism of valued
graphs.)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BudgetExceeded, InvalidInput, NotInModPlus, RelationViolation, ShapeMismatch
from .exact_linalg.field import Field, field_make
from .exact_linalg.matrix import array_rank, kernel_array, matmul, rref_array
from .munn import TripleSet, triple_set
from .valued_graph import graph_from_triples, positive_real_roots, classify_components, DYNKIN

DEFAULT_BUDGET = 10**7
MAX_ENUMERATION = 1 << 16


# -- F_k realized over the prime field ------------------------------------------


def companion(fk: Field) -> np.ndarray:
    """Matrix of multiplication by x on F_k in the basis 1, x, ..., x^(d-1)."""
    d = fk.degree
    mod = fk.modulus
    p = fk.char
    C = np.zeros((d, d), dtype=np.int64)
    for t in range(d - 1):
        C[t + 1, t] = 1
    for t in range(d):
        C[t, d - 1] = (-mod[t]) % p
    return C


def scalar_block(fk: Field, code: int) -> np.ndarray:
    """k-matrix of multiplication by an element of F_k."""
    d = fk.degree
    p = fk.char
    C = companion(fk)
    out = np.zeros((d, d), dtype=np.int64)
    power = np.eye(d, dtype=np.int64)
    for c in fk.to_coeffs(code):
        out = (out + c * power) % p
        power = (power @ C) % p
    return out


def fk_action(fk: Field, v: int) -> np.ndarray:
    return np.kron(np.eye(v, dtype=np.int64), companion(fk)) % fk.char


# -- modules ----------------------------------------------------------------------


def _mat(x, rows: int, cols: int, p: int, what: str) -> np.ndarray:
    arr = np.array(x, dtype=np.int64)
    if arr.size == 0:
        arr = arr.reshape(rows, cols) if rows * cols == 0 else arr
    if arr.shape != (rows, cols):
        raise ShapeMismatch(f"{what} has shape {arr.shape}, expected {(rows, cols)}")
    arr = arr % p
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class MunnModule:
    field: Field
    triples: TripleSet
    fks: tuple[Field, ...]
    v0: int
    vk: tuple[int, ...]
    alphas: tuple[tuple[np.ndarray, ...], ...]
    betas: tuple[tuple[np.ndarray, ...], ...]

    @property
    def p(self) -> int:
        return self.field.char

    def dim_k(self, k: int) -> int:
        return self.fks[k].degree * self.vk[k]

    @property
    def dim(self) -> int:
        return self.v0 + sum(self.dim_k(k) for k in range(len(self.vk)))

    @property
    def dimension_vector(self) -> tuple[int, ...]:
        return (self.v0,) + self.vk

    def action(self, k: int) -> np.ndarray:
        return fk_action(self.fks[k], self.vk[k])

    def all_alphas(self):
        for k, maps in enumerate(self.alphas):
            for a in maps:
                yield k, a

    def all_betas(self):
        for k, maps in enumerate(self.betas):
            for b in maps:
                yield k, b

    def key(self) -> bytes:
        parts = [np.array(self.dimension_vector, dtype=np.int64)]
        parts += [a.ravel() for _, a in self.all_alphas()]
        parts += [b.ravel() for _, b in self.all_betas()]
        return np.concatenate(parts).astype(np.int64).tobytes()

    def __repr__(self) -> str:
        return f"MunnModule(dims={self.dimension_vector}, triples={self.triples})"


def component_fields(triples: TripleSet, field: Field) -> tuple[Field, ...]:
    return tuple(field if t.d == 1 else field_make(field.char, t.d) for t in triples)


def module_make(
    triples,
    field: Field | int,
    v0: int,
    vk: Sequence[int],
    alphas: Sequence[Sequence] | None = None,
    betas: Sequence[Sequence] | None = None,
) -> MunnModule:
    """Validate shapes and the relations alpha_{ki} beta_{lj} = 0.

    ``alphas[k]`` lists m_k matrices of shape (d_k v_k) x v0; ``betas[k]``
    lists n_k matrices of shape v0 x (d_k v_k).  Missing lists mean zero maps.
    """
    T = triples if isinstance(triples, TripleSet) else triple_set(triples)
    if isinstance(field, int):
        field = field_make(field)
    if not field.is_prime_field:
        raise InvalidInput("modules are defined over a prime field")
    p = field.char
    s = len(T)
    vk = tuple(int(v) for v in vk)
    if len(vk) != s or v0 < 0 or any(v < 0 for v in vk):
        raise ShapeMismatch("one non-negative dimension per triple is required")
    fks = component_fields(T, field)
    alphas = alphas if alphas is not None else [[] for _ in range(s)]
    betas = betas if betas is not None else [[] for _ in range(s)]
    if len(alphas) != s or len(betas) != s:
        raise ShapeMismatch("alphas and betas need one list per triple")
    A, B = [], []
    for k, t in enumerate(T):
        D = t.d * vk[k]
        ak = list(alphas[k]) or [np.zeros((D, v0), dtype=np.int64)] * t.m
        bk = list(betas[k]) or [np.zeros((v0, D), dtype=np.int64)] * t.n
        if len(ak) != t.m or len(bk) != t.n:
            raise ShapeMismatch(f"component {k} needs {t.m} alpha and {t.n} beta maps")
        A.append(tuple(_mat(a, D, v0, p, f"alpha[{k}]") for a in ak))
        B.append(tuple(_mat(b, v0, D, p, f"beta[{k}]") for b in bk))
    V = MunnModule(field, T, fks, int(v0), vk, tuple(A), tuple(B))
    for k, a in V.all_alphas():
        for l, b in V.all_betas():
            if matmul(field, a, b).any():
                raise RelationViolation(f"alpha_{k} o beta_{l} is nonzero")
    return V


def zero_module(triples, field: Field | int) -> MunnModule:
    T = triples if isinstance(triples, TripleSet) else triple_set(triples)
    return module_make(T, field, 0, [0] * len(T))


def direct_sum(V: MunnModule, W: MunnModule) -> MunnModule:
    if V.triples != W.triples or V.field != W.field:
        raise ShapeMismatch("direct sums need the same triple set and field")
    s = len(V.vk)
    alphas, betas = [], []
    for k in range(s):
        alphas.append([_block_diag(a, b) for a, b in zip(V.alphas[k], W.alphas[k])])
        betas.append([_block_diag(a, b) for a, b in zip(V.betas[k], W.betas[k])])
    # F_k coordinates of V_k come first, then those of W_k
    return module_make(
        V.triples, V.field, V.v0 + W.v0, [a + b for a, b in zip(V.vk, W.vk)], alphas, betas
    )


def _block_diag(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros((a.shape[0] + b.shape[0], a.shape[1] + b.shape[1]), dtype=np.int64)
    out[: a.shape[0], : a.shape[1]] = a
    out[a.shape[0] :, a.shape[1] :] = b
    return out


# -- subspaces --------------------------------------------------------------------


def _column_echelon(field: Field, cols: np.ndarray, n: int) -> tuple[np.ndarray, list[int]]:
    if cols.size == 0:
        return np.zeros((n, 0), dtype=np.int64), []
    red, piv = rref_array(field, cols.T)
    return red[: len(piv)].T.copy(), piv


def image_sum(V: MunnModule) -> tuple[np.ndarray, list[int]]:
    """Reduced column-echelon basis of the sum of the images of all beta."""
    cols = [b for _, b in V.all_betas()]
    stack = np.hstack(cols) if cols else np.zeros((V.v0, 0), dtype=np.int64)
    return _column_echelon(V.field, stack, V.v0)


def kernel_meet(V: MunnModule) -> np.ndarray:
    """Basis (columns) of the intersection of the kernels of all alpha."""
    rows = [a for _, a in V.all_alphas()]
    if not rows:
        return np.eye(V.v0, dtype=np.int64)
    return kernel_array(V.field, np.vstack(rows))


def is_in_mod_plus(V: MunnModule) -> bool:
    """Sum of images of beta equals the intersection of kernels of alpha."""
    img, _ = image_sum(V)
    ker = kernel_meet(V)
    if img.shape[1] != ker.shape[1]:
        return False
    if img.shape[1] == 0:
        return True
    # alpha o beta = 0 gives img within ker; equal dimensions finish it
    return array_rank(V.field, np.hstack([img, ker])) == img.shape[1]


# -- graph representations --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GraphRep:
    field: Field
    triples: TripleSet
    fks: tuple[Field, ...]
    v_plus: int
    v_minus: int
    vk: tuple[int, ...]
    alphas: tuple[tuple[np.ndarray, ...], ...]  # V_- -> V_k
    betas: tuple[tuple[np.ndarray, ...], ...]  # V_k -> V_+
    in_mod_plus: bool = True

    @property
    def dimension_vector(self) -> tuple[int, ...]:
        return (self.v_plus, self.v_minus) + self.vk

    def same_data(self, other: "GraphRep") -> bool:
        if self.dimension_vector != other.dimension_vector or self.triples != other.triples:
            return False
        pairs = [
            (a, b)
            for xs, ys in ((self.alphas, other.alphas), (self.betas, other.betas))
            for ka, kb in zip(xs, ys)
            for a, b in zip(ka, kb)
        ]
        return all(np.array_equal(a, b) for a, b in pairs)


def graph_rep_make(
    triples,
    field: Field | int,
    v_plus: int,
    v_minus: int,
    vk: Sequence[int],
    alphas: Sequence[Sequence] | None = None,
    betas: Sequence[Sequence] | None = None,
) -> GraphRep:
    T = triples if isinstance(triples, TripleSet) else triple_set(triples)
    if isinstance(field, int):
        field = field_make(field)
    p = field.char
    fks = component_fields(T, field)
    s = len(T)
    vk = tuple(int(v) for v in vk)
    if len(vk) != s:
        raise ShapeMismatch("one dimension per triple is required")
    alphas = alphas if alphas is not None else [[] for _ in range(s)]
    betas = betas if betas is not None else [[] for _ in range(s)]
    A, B = [], []
    for k, t in enumerate(T):
        D = t.d * vk[k]
        ak = list(alphas[k]) or [np.zeros((D, v_minus), dtype=np.int64)] * t.m
        bk = list(betas[k]) or [np.zeros((v_plus, D), dtype=np.int64)] * t.n
        if len(ak) != t.m or len(bk) != t.n:
            raise ShapeMismatch(f"component {k} needs {t.m} alpha and {t.n} beta maps")
        A.append(tuple(_mat(a, D, v_minus, p, f"alpha[{k}]") for a in ak))
        B.append(tuple(_mat(b, v_plus, D, p, f"beta[{k}]") for b in bk))
    return GraphRep(field, T, fks, v_plus, v_minus, vk, tuple(A), tuple(B))


def is_in_rep_plus(W: GraphRep) -> bool:
    """No trivial summand at + or -: betas jointly onto V_+, alphas jointly injective on V_-."""
    f = W.field
    betas = [b for bk in W.betas for b in bk]
    img = array_rank(f, np.hstack(betas)) if betas and W.v_plus else 0
    alphas = [a for ak in W.alphas for a in ak]
    ker = W.v_minus - (array_rank(f, np.vstack(alphas)) if alphas and W.v_minus else 0)
    return img == W.v_plus and ker == 0


@dataclass(frozen=True)
class _Split:
    basis_plus: np.ndarray
    pivots: list[int]
    complement: np.ndarray  # unit vectors at non-pivot rows
    change: np.ndarray  # [basis_plus | complement], invertible


def _split(V: MunnModule) -> _Split:
    Bp, piv = image_sum(V)
    rest = [r for r in range(V.v0) if r not in set(piv)]
    C = np.zeros((V.v0, len(rest)), dtype=np.int64)
    C[rest, np.arange(len(rest))] = 1
    return _Split(Bp, piv, C, np.hstack([Bp, C]))


def to_graph_rep(V: MunnModule, strict: bool = False) -> GraphRep:
    """The functor Phi: V_+ = sum Im beta, V_- = V_0 / V_+.

    V_+ carries its reduced column-echelon basis; V_- is identified with the
    span of the unit vectors at the non-pivot rows.  Outside Mod+ the induced
    alphas are not well defined; ``strict`` raises NotInModPlus, otherwise the
    result is flagged.
    """
    inside = is_in_mod_plus(V)
    if strict and not inside:
        raise NotInModPlus("the module is not in Mod+")
    sp = _split(V)
    f = V.field
    alphas = tuple(tuple(matmul(f, a, sp.complement) for a in ak) for ak in V.alphas)
    betas = tuple(tuple(b[sp.pivots] for b in bk) for bk in V.betas)
    return GraphRep(
        f, V.triples, V.fks, len(sp.pivots), sp.complement.shape[1], V.vk, alphas, betas, inside
    )


def from_graph_rep(W: GraphRep) -> MunnModule:
    """The functor Psi: V_0 = W_+ + W_-, alphas zero on W_+, betas into W_+."""
    p_, m_ = W.v_plus, W.v_minus
    alphas = [[np.hstack([np.zeros((a.shape[0], p_), dtype=np.int64), a]) for a in ak] for ak in W.alphas]
    betas = [[np.vstack([b, np.zeros((m_, b.shape[1]), dtype=np.int64)]) for b in bk] for bk in W.betas]
    return module_make(W.triples, W.field, p_ + m_, W.vk, alphas, betas)


# -- morphisms --------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HomTuple:
    phi0: np.ndarray
    phis: tuple[np.ndarray, ...]

    def is_zero(self) -> bool:
        return not self.phi0.any() and not any(x.any() for x in self.phis)

    def compose(self, other: "HomTuple", p: int) -> "HomTuple":
        """self o other."""
        return HomTuple(
            (self.phi0 @ other.phi0) % p,
            tuple((a @ b) % p for a, b in zip(self.phis, other.phis)),
        )

    def stacked(self) -> np.ndarray:
        mats = [self.phi0] + list(self.phis)
        rows = sum(m.shape[0] for m in mats)
        cols = sum(m.shape[1] for m in mats)
        out = np.zeros((rows, cols), dtype=np.int64)
        r = c = 0
        for m in mats:
            out[r : r + m.shape[0], c : c + m.shape[1]] = m
            r += m.shape[0]
            c += m.shape[1]
        return out


@dataclass(frozen=True, eq=False)
class HomBasis:
    source: MunnModule
    target: MunnModule
    basis: tuple[HomTuple, ...]

    def __len__(self) -> int:
        return len(self.basis)

    def combine(self, coeffs: Sequence[int]) -> HomTuple:
        p = self.source.p
        phi0 = np.zeros((self.target.v0, self.source.v0), dtype=np.int64)
        phis = [np.zeros((self.target.dim_k(k), self.source.dim_k(k)), dtype=np.int64) for k in range(len(self.source.vk))]
        for c, h in zip(coeffs, self.basis):
            if c:
                phi0 = (phi0 + c * h.phi0) % p
                phis = [(x + c * y) % p for x, y in zip(phis, h.phis)]
        return HomTuple(phi0, tuple(phis))

    def elements(self):
        p = self.source.p
        for coeffs in itertools.product(range(p), repeat=len(self.basis)):
            yield self.combine(coeffs)


def _kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(a, b) if a.size and b.size else np.zeros((a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]), dtype=np.int64)


def hom_space(V: MunnModule, W: MunnModule) -> HomBasis:
    """Solutions of phi_k alpha = alpha' phi_0, phi_0 beta = beta' phi_k, phi_k F_k-linear."""
    if V.triples.triples != W.triples.triples or V.field != W.field:
        raise ShapeMismatch("modules over different algebras")
    p = V.p
    s = len(V.vk)
    sizes = [(W.v0, V.v0)] + [(W.dim_k(k), V.dim_k(k)) for k in range(s)]
    offsets = np.cumsum([0] + [a * b for a, b in sizes])
    nvar = int(offsets[-1])
    blocks: list[np.ndarray] = []

    def row(parts: dict[int, np.ndarray], nrows: int) -> None:
        r = np.zeros((nrows, nvar), dtype=np.int64)
        for idx, m in parts.items():
            r[:, offsets[idx] : offsets[idx + 1]] = (r[:, offsets[idx] : offsets[idx + 1]] + m) % p
        blocks.append(r)

    eye = lambda n: np.eye(n, dtype=np.int64)  # noqa: E731
    # row-major vec: vec(A X B) = kron(A, B^T) vec(X)
    for k in range(s):
        Dw, Dv = sizes[k + 1]
        Av, Aw = V.action(k), W.action(k)
        row({k + 1: _kron(eye(Dw), Av.T) - _kron(Aw, eye(Dv))}, Dw * Dv)
        for a, a2 in zip(V.alphas[k], W.alphas[k]):
            row({k + 1: _kron(eye(Dw), a.T), 0: -_kron(a2, eye(V.v0))}, Dw * V.v0)
        for b, b2 in zip(V.betas[k], W.betas[k]):
            row({0: _kron(eye(W.v0), b.T), k + 1: -_kron(b2, eye(Dv))}, W.v0 * Dv)
    system = np.vstack(blocks) % p if blocks else np.zeros((0, nvar), dtype=np.int64)
    if nvar == 0:
        return HomBasis(V, W, ())
    ker = kernel_array(V.field, system) if system.shape[0] else np.eye(nvar, dtype=np.int64)
    basis = []
    for col in ker.T:
        phi0 = col[offsets[0] : offsets[1]].reshape(sizes[0])
        phis = tuple(col[offsets[k + 1] : offsets[k + 2]].reshape(sizes[k + 1]) for k in range(s))
        basis.append(HomTuple(phi0, phis))
    return HomBasis(V, W, tuple(basis))


def identity_hom(V: MunnModule) -> HomTuple:
    return HomTuple(np.eye(V.v0, dtype=np.int64), tuple(np.eye(V.dim_k(k), dtype=np.int64) for k in range(len(V.vk))))


def is_hom(phi: HomTuple, V: MunnModule, W: MunnModule) -> bool:
    p = V.p
    for k in range(len(V.vk)):
        if not np.array_equal((phi.phis[k] @ V.action(k)) % p, (W.action(k) @ phi.phis[k]) % p):
            return False
        for a, a2 in zip(V.alphas[k], W.alphas[k]):
            if not np.array_equal((phi.phis[k] @ a) % p, (a2 @ phi.phi0) % p):
                return False
        for b, b2 in zip(V.betas[k], W.betas[k]):
            if not np.array_equal((phi.phi0 @ b) % p, (b2 @ phi.phis[k]) % p):
                return False
    return True


def in_ideal_J(phi: HomTuple, V: MunnModule, W: MunnModule) -> bool:
    """phi_k = 0 for all k, phi_0(V_+) = 0 and Im phi_0 within W_+."""
    f = V.field
    if any(x.any() for x in phi.phis):
        return False
    Vp, _ = image_sum(V)
    if Vp.shape[1] and matmul(f, phi.phi0, Vp).any():
        return False
    Wp, _ = image_sum(W)
    if not phi.phi0.any():
        return True
    return array_rank(f, np.hstack([Wp, phi.phi0])) == Wp.shape[1]


@dataclass(frozen=True, eq=False)
class GraphMorphism:
    plus: np.ndarray
    minus: np.ndarray
    phis: tuple[np.ndarray, ...]

    def is_zero(self) -> bool:
        return not self.plus.any() and not self.minus.any() and not any(x.any() for x in self.phis)


def phi_on_morphism(phi: HomTuple, V: MunnModule, W: MunnModule) -> GraphMorphism:
    """Phi applied to a morphism: the induced maps on V_+, V_- and V_k."""
    from .exact_linalg.matrix import Matrix, solve

    f = V.field
    sv, sw = _split(V), _split(W)
    plus = matmul(f, phi.phi0, sv.basis_plus)[sw.pivots] if sv.basis_plus.shape[1] else np.zeros((len(sw.pivots), 0), dtype=np.int64)
    img = matmul(f, phi.phi0, sv.complement)
    if W.v0 and img.shape[1]:
        coords = solve(Matrix._wrap(f, sw.change), Matrix._wrap(f, img)).data
        minus = coords[len(sw.pivots) :]
    else:
        minus = np.zeros((sw.complement.shape[1], sv.complement.shape[1]), dtype=np.int64)
    return GraphMorphism(plus, minus, phi.phis)


def is_invertible_hom(phi: HomTuple, V: MunnModule, W: MunnModule) -> bool:
    if V.dimension_vector != W.dimension_vector:
        return False
    M = phi.stacked()
    return M.shape[0] == M.shape[1] and array_rank(V.field, M) == M.shape[0]


def find_isomorphism(V: MunnModule, W: MunnModule, limit: int = MAX_ENUMERATION) -> HomTuple | None:
    """An invertible element of Hom(V, W), by exhaustive search."""
    if V.dimension_vector != W.dimension_vector:
        return None
    H = hom_space(V, W)
    if V.p ** len(H) > limit:
        raise BudgetExceeded(f"Hom space of size {V.p}^{len(H)} is too large to search")
    for phi in H.elements():
        if is_invertible_hom(phi, V, W):
            return phi
    return None


def is_indecomposable(V: MunnModule, limit: int = MAX_ENUMERATION) -> bool | None:
    """True iff End(V) has no idempotents besides 0 and 1; None if End is too large."""
    if V.dim == 0:
        return False
    E = hom_space(V, V)
    p = V.p
    e = len(E)
    if p**e > limit:
        return None
    mats = np.array([h.stacked() for h in E.basis], dtype=np.int64)  # (e, N, N)
    coeffs = np.array(list(itertools.product(range(p), repeat=e)), dtype=np.int64)
    elems = np.tensordot(coeffs, mats, axes=(1, 0)) % p  # (p^e, N, N)
    squares = np.matmul(elems, elems) % p
    idem = np.all(squares == elems, axis=(1, 2))
    N = elems.shape[1]
    zero = ~elems.reshape(len(elems), -1).any(axis=1)
    one = np.all(elems == np.eye(N, dtype=np.int64), axis=(1, 2))
    return not bool(np.any(idem & ~zero & ~one))


# -- census -----------------------------------------------------------------------


def _gl(fk: Field, v: int) -> np.ndarray:
    """All invertible F_k-linear maps of F_k^v, as k-matrices of size d v."""
    d = fk.degree
    q = fk.size
    blocks = [scalar_block(fk, c) for c in range(q)]
    out = []
    for entries in itertools.product(range(q), repeat=v * v):
        M = np.zeros((d * v, d * v), dtype=np.int64)
        for i in range(v):
            for j in range(v):
                M[i * d : (i + 1) * d, j * d : (j + 1) * d] = blocks[entries[i * v + j]]
        if array_rank(field_make(fk.char), M) == d * v:
            out.append(M)
    if not out:
        out.append(np.zeros((0, 0), dtype=np.int64))
    return np.array(out, dtype=np.int64).reshape(len(out), d * v, d * v)


def _inverses(mats: np.ndarray, field: Field) -> np.ndarray:
    from .exact_linalg.matrix import Matrix, inverse

    if mats.shape[1] == 0:
        return mats.copy()
    return np.array([inverse(Matrix._wrap(field, m)).data for m in mats], dtype=np.int64)


@dataclass(frozen=True)
class Census:
    triples: TripleSet
    field: Field
    caps: tuple[int, int]
    modules: tuple[MunnModule, ...]
    enumerated: int
    expected: int | None

    @property
    def count(self) -> int:
        return len(self.modules)

    @property
    def match(self) -> bool | None:
        return None if self.expected is None else self.count == self.expected


def expected_census_count(T) -> int | None:
    """#positive real roots - 2 + 1 when every graph component is Dynkin."""
    g = graph_from_triples(T)
    if any(c.kind != DYNKIN for c in classify_components(g)):
        return None
    return len(positive_real_roots(g)) - 2 + 1


def _dimension_vectors(T: TripleSet, caps: tuple[int, int]):
    cap0, capk = caps
    for v0 in range(cap0 + 1):
        for vk in itertools.product(range(capk + 1), repeat=len(T)):
            if v0 or any(vk):
                yield v0, vk


def census_size(T: TripleSet, caps: tuple[int, int], p: int) -> int:
    """Upper bound on the number of (alpha, beta) tuples the census visits."""
    total = 0
    for v0, vk in _dimension_vectors(T, caps):
        entries = sum((t.m + t.n) * t.d * v * v0 for t, v in zip(T, vk))
        total += p**entries
    return total


def enumerate_indecomposables(
    T,
    caps: tuple[int, int],
    field: Field | int = 2,
    budget: int = DEFAULT_BUDGET,
) -> Census:
    """All indecomposable modules within the dimension caps, up to isomorphism.

    ``caps = (a, b)`` bounds dim V_0 by a and each F_k-dimension of V_k by b.
    Modules are enumerated with beta columns taken inside the common kernel of
    the alphas; isomorphism classes are found by orbit enumeration under
    GL(V_0) x prod GL_{F_k}(V_k).
    """
    T = T if isinstance(T, TripleSet) else triple_set(T)
    if isinstance(field, int):
        field = field_make(field)
    if field.char not in (2, 3) or not field.is_prime_field:
        raise InvalidInput("the census runs over F_2 or F_3")
    p = field.char
    bound = census_size(T, caps, p)
    if bound > budget:
        raise BudgetExceeded(f"census would visit up to {bound} tuples (budget {budget})")
    fks = component_fields(T, field)
    reps: list[MunnModule] = []
    visited_total = 0
    for v0, vk in _dimension_vectors(T, caps):
        Ds = [t.d * v for t, v in zip(T, vk)]
        alpha_shapes = [(Ds[k], v0) for k, t in enumerate(T) for _ in range(t.m)]
        alpha_owner = [k for k, t in enumerate(T) for _ in range(t.m)]
        beta_owner = [k for k, t in enumerate(T) for _ in range(t.n)]
        # group for orbit enumeration
        g0 = _gl(field, v0)
        gk = [_gl(fk, v) for fk, v in zip(fks, vk)]
        g0i = _inverses(g0, field)
        gki = [_inverses(g, field) for g in gk]
        group = list(itertools.product(range(len(g0)), *[range(len(g)) for g in gk]))
        seen: set[bytes] = set()
        alpha_entries = sum(a * b for a, b in alpha_shapes)
        for acoef in itertools.product(range(p), repeat=alpha_entries):
            alphas_flat = []
            pos = 0
            for shp in alpha_shapes:
                n = shp[0] * shp[1]
                alphas_flat.append(np.array(acoef[pos : pos + n], dtype=np.int64).reshape(shp))
                pos += n
            if alphas_flat and v0:
                K = kernel_array(field, np.vstack(alphas_flat))
            else:
                K = np.eye(v0, dtype=np.int64)
            kdim = K.shape[1]
            beta_coef_entries = sum(kdim * Ds[k] for k in beta_owner)
            for bcoef in itertools.product(range(p), repeat=beta_coef_entries):
                visited_total += 1
                betas_flat = []
                pos = 0
                for k in beta_owner:
                    n = kdim * Ds[k]
                    coef = np.array(bcoef[pos : pos + n], dtype=np.int64).reshape(kdim, Ds[k])
                    betas_flat.append((K @ coef) % p if kdim else np.zeros((v0, Ds[k]), dtype=np.int64))
                    pos += n
                key = _encode(alphas_flat, betas_flat)
                if key in seen:
                    continue
                alphas = [[a for a, o in zip(alphas_flat, alpha_owner) if o == k] for k in range(len(T))]
                betas = [[b for b, o in zip(betas_flat, beta_owner) if o == k] for k in range(len(T))]
                V = module_make(T, field, v0, vk, alphas, betas)
                for gi in group:
                    h0, h0i = g0[gi[0]], g0i[gi[0]]
                    hs = [gk[k][gi[k + 1]] for k in range(len(T))]
                    his = [gki[k][gi[k + 1]] for k in range(len(T))]
                    ta = [(hs[o] @ a @ h0i) % p for a, o in zip(alphas_flat, alpha_owner)]
                    tb = [(h0 @ b @ his[o]) % p for b, o in zip(betas_flat, beta_owner)]
                    seen.add(_encode(ta, tb))
                if is_indecomposable(V):
                    reps.append(V)
    return Census(T, field, tuple(caps), tuple(reps), visited_total, expected_census_count(T))


def _encode(alphas: Sequence[np.ndarray], betas: Sequence[np.ndarray]) -> bytes:
    parts = [a.ravel() for a in alphas] + [b.ravel() for b in betas]
    if not parts:
        return b""
    return np.concatenate(parts).astype(np.int8).tobytes()


# -- sampling ---------------------------------------------------------------------


def _random_fk_invertible(fk: Field, v: int, rng) -> np.ndarray:
    d = fk.degree
    prime = field_make(fk.char)
    while True:
        M = np.zeros((d * v, d * v), dtype=np.int64)
        for i in range(v):
            for j in range(v):
                M[i * d : (i + 1) * d, j * d : (j + 1) * d] = scalar_block(fk, rng.randrange(fk.size))
        if array_rank(prime, M) == d * v:
            return M


def random_graph_rep(T, caps: tuple[int, int], field: Field | int, rng, tries: int = 200) -> GraphRep:
    """A random representation in Rep+ with dim V_+ + dim V_- <= caps[0], dim V_k <= caps[1]."""
    T = T if isinstance(T, TripleSet) else triple_set(T)
    if isinstance(field, int):
        field = field_make(field)
    p = field.char
    fks = component_fields(T, field)
    for _ in range(tries):
        vp = rng.randint(0, caps[0])
        vm = rng.randint(0, caps[0] - vp)
        vk = [rng.randint(0, caps[1]) for _ in T]
        alphas = [
            [np.array([[rng.randrange(p) for _ in range(vm)] for _ in range(t.d * v)], dtype=np.int64).reshape(t.d * v, vm) for _ in range(t.m)]
            for t, v in zip(T, vk)
        ]
        betas = [
            [np.array([[rng.randrange(p) for _ in range(t.d * v)] for _ in range(vp)], dtype=np.int64).reshape(vp, t.d * v) for _ in range(t.n)]
            for t, v in zip(T, vk)
        ]
        W = graph_rep_make(T, field, vp, vm, vk, alphas, betas)
        if is_in_rep_plus(W):
            return W
    raise BudgetExceeded("no representation in Rep+ found within the sampling budget")


def conjugate(V: MunnModule, g0: np.ndarray, gs: Sequence[np.ndarray]) -> MunnModule:
    """The isomorphic module with alpha' = h alpha g0^-1 and beta' = g0 beta h^-1."""
    from .exact_linalg.matrix import Matrix, inverse

    f = V.field
    p = V.p
    g0i = inverse(Matrix._wrap(f, g0)).data if V.v0 else g0
    gis = [inverse(Matrix._wrap(f, g)).data if g.size else g for g in gs]
    alphas = [[(gs[k] @ a @ g0i) % p for a in V.alphas[k]] for k in range(len(V.vk))]
    betas = [[(g0 @ b @ gis[k]) % p for b in V.betas[k]] for k in range(len(V.vk))]
    return module_make(V.triples, f, V.v0, V.vk, alphas, betas)


def random_mod_plus(T, caps: tuple[int, int], field: Field | int, rng) -> MunnModule:
    """A random module in Mod+: Psi of a random Rep+ object in a random basis."""
    W = random_graph_rep(T, caps, field, rng)
    V = from_graph_rep(W)
    prime = V.field
    while True:
        g0 = np.array([[rng.randrange(V.p) for _ in range(V.v0)] for _ in range(V.v0)], dtype=np.int64).reshape(V.v0, V.v0)
        if array_rank(prime, g0) == V.v0:
            break
    gs = [_random_fk_invertible(fk, v, rng) for fk, v in zip(V.fks, V.vk)]
    return conjugate(V, g0, gs)
