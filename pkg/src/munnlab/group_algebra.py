"""The group algebra kG over a prime field with char k not dividing |G|.

Central primitive idempotents are found by splitting the center: the class
sums span Z(kG), and the minimal polynomial of a central element acting on
``eZ`` factors into coprime pieces whose CRT idempotents refine ``e``.  A
component ``e`` is primitive once some element of ``eZ`` has an irreducible
minimal polynomial of degree ``dim eZ``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import InternalInvariantViolation, InvalidInput, ModularCase
from .exact_linalg.field import Field, field_make, is_prime, MAX_EXTENSION_SIZE
from .exact_linalg.matrix import Matrix, array_rank, kernel_array, matmul, rref_array
from .exact_linalg.poly import Polynomial, poly_factor
from .groups import FiniteGroup, exponent

# keeps products of two residues times the group order inside int64
MAX_GROUP_ALGEBRA_CHAR = 1 << 24


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """Element of kG as a coefficient vector indexed by group elements."""

    group: FiniteGroup
    field: Field
    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=np.int64) % self.field.char
        if arr.shape != (self.group.order,):
            raise InvalidInput("coefficient vector length must equal |G|")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @classmethod
    def basis(cls, group: FiniteGroup, field: Field, g: int) -> "AlgebraElement":
        v = np.zeros(group.order, dtype=np.int64)
        v[g] = 1
        return cls(group, field, v)

    @classmethod
    def zero(cls, group: FiniteGroup, field: Field) -> "AlgebraElement":
        return cls(group, field, np.zeros(group.order, dtype=np.int64))

    @classmethod
    def one(cls, group: FiniteGroup, field: Field) -> "AlgebraElement":
        return cls.basis(group, field, group.identity)

    def _same(self, other: "AlgebraElement") -> None:
        if other.group is not self.group or other.field != self.field:
            raise InvalidInput("algebra elements from different group algebras")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._same(other)
        return AlgebraElement(self.group, self.field, self.coeffs + other.coeffs)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._same(other)
        return AlgebraElement(self.group, self.field, self.coeffs - other.coeffs)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.group, self.field, -self.coeffs)

    def scale(self, c: int) -> "AlgebraElement":
        return AlgebraElement(self.group, self.field, self.coeffs * (int(c) % self.field.char))

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._same(other)
        p = self.field.char
        out = np.zeros(self.group.order, dtype=np.int64)
        prod = np.outer(self.coeffs, other.coeffs) % p
        np.add.at(out, self.group.array.ravel(), prod.ravel())
        return AlgebraElement(self.group, self.field, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (
            self.group is other.group
            and self.field == other.field
            and bool(np.array_equal(self.coeffs, other.coeffs))
        )

    def __hash__(self) -> int:
        return hash((id(self.group), self.field, self.coeffs.tobytes()))

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def is_central(self) -> bool:
        G = self.group
        return all(
            self * AlgebraElement.basis(G, self.field, g) == AlgebraElement.basis(G, self.field, g) * self
            for g in G.generators
        )

    def fingerprint(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.coeffs)

    def __repr__(self) -> str:
        terms = [
            (f"{c}*" if c != 1 else "") + self.group.labels[g]
            for g, c in enumerate(self.coeffs.tolist())
            if c
        ]
        return " + ".join(terms) or "0"


def regular_matrix(x: AlgebraElement) -> Matrix:
    """Matrix of left multiplication by ``x`` in the group-element basis."""
    G = x.group
    n = G.order
    out = np.zeros((n, n), dtype=np.int64)
    cols = np.broadcast_to(np.arange(n), (n, n))
    weights = np.broadcast_to(x.coeffs[:, None], (n, n))
    np.add.at(out, (G.array, cols), weights)
    return Matrix._wrap(x.field, out % x.field.char)


def group_algebra_field(G: FiniteGroup, char: int) -> Field:
    """Prime field of characteristic ``char`` suitable for kG."""
    if not is_prime(char):
        raise InvalidInput(f"characteristic {char} is not prime")
    if char >= MAX_GROUP_ALGEBRA_CHAR:
        raise InvalidInput(f"characteristic {char} is too large for group-algebra work")
    if G.order % char == 0:
        raise ModularCase(
            f"char {char} divides |G| = {G.order}; kG is not semisimple and is not supported"
        )
    return field_make(char)


def auto_char(G: FiniteGroup) -> int:
    """Smallest prime not dividing |G|."""
    p = 2
    while G.order % p == 0 or not is_prime(p):
        p += 1
    return p


def split_char(G: FiniteGroup) -> int:
    """Smallest prime congruent to 1 modulo exponent(G); every d_k is then 1."""
    ex = exponent(G)
    p = ex + 1
    while not is_prime(p):
        p += ex
    return p


# -- the center ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Center:
    """Z(kG) in the class-sum basis with its structure constants."""

    group: FiniteGroup
    field: Field
    consts: np.ndarray  # consts[i, j, k]: coefficient of C_k in C_i * C_j

    @property
    def dim(self) -> int:
        return self.consts.shape[0]

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        p = self.field.char
        h = self.dim
        t = (x @ self.consts.reshape(h, h * h)) % p
        return (y @ t.reshape(h, h)) % p

    def mult_matrix(self, x: np.ndarray) -> np.ndarray:
        """Matrix (acting on column vectors) of multiplication by x."""
        h = self.dim
        return ((x @ self.consts.reshape(h, h * h)) % self.field.char).reshape(h, h).T.copy()

    def one(self) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[self.class_of[self.group.identity]] = 1
        return v

    @cached_property
    def class_of(self) -> np.ndarray:
        out = np.zeros(self.group.order, dtype=np.int64)
        for k, cls in enumerate(self.group.conjugacy_classes):
            out[list(cls)] = k
        return out

    def to_algebra(self, x: np.ndarray) -> AlgebraElement:
        return AlgebraElement(self.group, self.field, x[self.class_of])

    def from_algebra(self, a: AlgebraElement) -> np.ndarray:
        reps = [cls[0] for cls in self.group.conjugacy_classes]
        return a.coeffs[reps].copy()


def center(G: FiniteGroup, field: Field) -> Center:
    classes = G.conjugacy_classes
    h = len(classes)
    class_of = np.zeros(G.order, dtype=np.int64)
    for k, cls in enumerate(classes):
        class_of[list(cls)] = k
    sizes = np.array([len(c) for c in classes], dtype=np.int64)
    consts = np.zeros((h, h, h), dtype=np.int64)
    arr = G.array
    for i, ci in enumerate(classes):
        for j, cj in enumerate(classes):
            counts = np.bincount(class_of[arr[np.ix_(ci, cj)]].ravel(), minlength=h)
            if np.any(counts % sizes):
                raise InternalInvariantViolation("class sum product is not central")
            consts[i, j] = (counts // sizes) % field.char
    consts.setflags(write=False)
    return Center(G, field, consts)


def _echelon_basis(field: Field, cols: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced column-echelon basis of the column span, with pivot rows."""
    red, piv = rref_array(field, cols.T)
    return red[: len(piv)].T.copy(), piv


# -- Wedderburn components ----------------------------------------------------


@dataclass(frozen=True, eq=False)
class WedderburnComponent:
    """One simple component Mat(c, F_k) of kG, with dim F_k = d and u = c*d."""

    idempotent: AlgebraElement
    d: int
    c: int
    u: int
    generator: AlgebraElement  # central element generating e_k Z as a field
    center_minpoly: Polynomial  # its minimal polynomial, irreducible of degree d

    @property
    def group(self) -> FiniteGroup:
        return self.idempotent.group

    @property
    def field(self) -> Field:
        return self.idempotent.field

    @property
    def dim(self) -> int:
        return self.c * self.c * self.d

    def __repr__(self) -> str:
        return f"WedderburnComponent(d={self.d}, c={self.c}, u={self.u})"

    @cached_property
    def block_basis(self) -> tuple[np.ndarray, list[int]]:
        """Column-echelon basis of e_k kG inside kG, with pivot rows."""
        reg = regular_matrix(self.idempotent).data
        basis, piv = _echelon_basis(self.field, reg)
        return basis, piv

    @cached_property
    def element_blocks(self) -> np.ndarray:
        """Left action of each group element on e_k kG, shape (|G|, D, D)."""
        G = self.group
        basis, piv = self.block_basis
        piv_arr = np.array(piv, dtype=np.int64)
        inv = np.array(G.inverse, dtype=np.int64)
        # (L_g B)[r] = B[g^{-1} r]
        rows = G.array[inv[:, None], piv_arr[None, :]]  # (|G|, D)
        out = basis[rows]  # (|G|, D, D)
        out.setflags(write=False)
        return out

    def restricted(self, x: AlgebraElement) -> np.ndarray:
        """Matrix of left multiplication by x on e_k kG (D x D)."""
        blocks = self.element_blocks
        return np.tensordot(x.coeffs, blocks, axes=(0, 0)) % self.field.char

    @cached_property
    def simple_module(self) -> "SimpleModule":
        return _find_simple_module(self)


@dataclass(frozen=True, eq=False)
class WedderburnData:
    group: FiniteGroup
    field: Field
    components: tuple[WedderburnComponent, ...]
    seed: int = 0

    def __iter__(self):
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, k: int) -> WedderburnComponent:
        return self.components[k]

    def summary(self) -> list[tuple[int, int, int]]:
        return [(c.d, c.c, c.u) for c in self.components]


def _split_center(Z: Center, seed: int) -> list[tuple[np.ndarray, np.ndarray, Polynomial]]:
    """Primitive idempotents of Z with a field generator and its minpoly."""
    field = Z.field
    p = field.char
    rng = random.Random(seed)
    h = Z.dim
    class_sums = [np.eye(h, dtype=np.int64)[i] for i in range(h)]
    done: list[tuple[np.ndarray, np.ndarray, Polynomial]] = []
    todo = [Z.one()]
    while todo:
        e = todo.pop()
        basis, piv = _echelon_basis(field, Z.mult_matrix(e))
        D = basis.shape[1]
        if D == 1:
            done.append((e, e.copy(), Polynomial(field, (0, 1))))
            continue
        split = False
        tries = 0
        sweep = iter(class_sums)
        while not split:
            tries += 1
            if tries > 64 * h + 256:
                raise InternalInvariantViolation("center splitting did not converge")
            cand = next(sweep, None)
            if cand is None:
                cand = np.array([rng.randrange(p) for _ in range(h)], dtype=np.int64)
            z = Z.mul(e, cand)
            mz = Z.mult_matrix(z)
            restricted = matmul(field, mz, basis)[piv]
            m = _minpoly_array(field, restricted)
            factors = poly_factor(m, seed)
            if len(factors) == 1:
                if m.degree == D:
                    done.append((e, z, m))
                    split = True
                continue
            for f, mult in factors:
                if mult != 1:
                    raise InternalInvariantViolation("center is not reduced")
                g = m // f
                ginv = (g % f).inverse_mod(f)
                E = (g * ginv) % m
                todo.append(_eval_central(Z, E, z, e))
            split = True
    return done


def _eval_central(Z: Center, poly: Polynomial, z: np.ndarray, e: np.ndarray) -> np.ndarray:
    acc = np.zeros(Z.dim, dtype=np.int64)
    for c in reversed(poly.coeffs):
        acc = (Z.mul(acc, z) + c * e) % Z.field.char
    return acc


def _minpoly_array(field: Field, a: np.ndarray) -> Polynomial:
    from .exact_linalg.matrix import min_poly

    return min_poly(Matrix._wrap(field, a))


def wedderburn(G: FiniteGroup, field: Field | int, seed: int = 0) -> WedderburnData:
    """Decompose kG into simple components with invariants (d, c, u).

    Raises ModularCase when the characteristic divides |G|.
    """
    if isinstance(field, int):
        field = group_algebra_field(G, field)
    if not field.is_prime_field:
        raise InvalidInput("the group algebra base must be a prime field")
    field = group_algebra_field(G, field.char)
    Z = center(G, field)
    comps = []
    for e_vec, z_vec, m in _split_center(Z, seed):
        e = Z.to_algebra(e_vec)
        z = Z.to_algebra(z_vec)
        d = m.degree
        dim = array_rank(field, regular_matrix(e).data)
        if dim % d:
            raise InternalInvariantViolation("component dimension not divisible by d")
        c = math.isqrt(dim // d)
        if c * c * d != dim:
            raise InternalInvariantViolation(f"dim e_k kG = {dim} is not c^2 * d with d = {d}")
        comps.append(WedderburnComponent(e, d, c, c * d, z, m))
    comps.sort(key=lambda k: (k.d, k.c, k.idempotent.fingerprint()))
    data = WedderburnData(G, field, tuple(comps), seed)
    check_wedderburn(data)
    return data


def check_wedderburn(data: WedderburnData) -> None:
    """Assert orthogonality, completeness and the dimension counts."""
    G, field = data.group, data.field
    total = AlgebraElement.zero(G, field)
    for i, a in enumerate(data.components):
        e = a.idempotent
        if e * e != e:
            raise InternalInvariantViolation(f"component {i}: e^2 != e")
        if not e.is_central():
            raise InternalInvariantViolation(f"component {i}: e is not central")
        for b in data.components[i + 1 :]:
            if not (e * b.idempotent).is_zero():
                raise InternalInvariantViolation("idempotents are not orthogonal")
        total = total + e
    if total != AlgebraElement.one(G, field):
        raise InternalInvariantViolation("idempotents do not sum to 1")
    if sum(k.c * k.c * k.d for k in data.components) != G.order:
        raise InternalInvariantViolation("sum of c^2 d differs from |G|")
    if sum(k.d for k in data.components) != len(G.conjugacy_classes):
        raise InternalInvariantViolation("sum of d differs from the class number")


# -- sandwich matrices and ranks ----------------------------------------------


def as_algebra_grid(G: FiniteGroup, field: Field, grid) -> list[list[AlgebraElement]]:
    """Map a grid of G^0 entries (index or None) or AlgebraElements into kG."""
    out = []
    for row in grid:
        r = []
        for x in row:
            if isinstance(x, AlgebraElement):
                r.append(x)
            elif x is None:
                r.append(AlgebraElement.zero(G, field))
            else:
                r.append(AlgebraElement.basis(G, field, int(x)))
        out.append(r)
    if not out or len({len(r) for r in out}) != 1 or not out[0]:
        raise InvalidInput("sandwich must be a non-empty rectangular grid")
    return out


def regular_block_matrix(mu: Sequence[Sequence[AlgebraElement]]) -> Matrix:
    """(P|G|) x (Q|G|) matrix of x -> mu x on (kG)^Q."""
    first = mu[0][0]
    return Matrix.block(first.field, [[regular_matrix(x) for x in row] for row in mu])


def component_block(mu: Sequence[Sequence[AlgebraElement]], comp: WedderburnComponent) -> np.ndarray:
    """The isotypic block: x -> mu x restricted to (e_k kG)^Q -> (e_k kG)^P."""
    return np.block([[comp.restricted(x) for x in row] for row in mu])


def component_rank(mu, comp: WedderburnComponent) -> int:
    """r_k, the rank of the sandwich's image in Mat(Pc x Qc, F_k).

    The isotypic block has prime-field rank r_k * u_k, since e_k kG is a sum
    of c_k copies of the simple module U_k and the image of mu on U_k^{Q c_k}
    is U_k^{r_k}.  Divisibility by u_k is asserted.
    """
    mu = as_algebra_grid(comp.group, comp.field, mu)
    rank = array_rank(comp.field, component_block(mu, comp))
    if rank % comp.u:
        raise InternalInvariantViolation(
            f"isotypic block rank {rank} is not a multiple of u = {comp.u}"
        )
    return rank // comp.u


def regular_block_rank(mu) -> int:
    """Prime-field rank of the full regular block matrix of a sandwich."""
    return array_rank(mu[0][0].field, regular_block_matrix(mu).data)


# -- explicit simple modules ----------------------------------------------------


@dataclass(frozen=True, eq=False)
class SimpleModule:
    """A simple left kG-module U_k inside e_k kG, with an F_k-basis.

    ``basis`` has columns ``z^t b_i`` ordered by (i, t); ``fk`` realizes the
    component's center as F_p[x]/(minpoly of the generator).
    """

    component: WedderburnComponent
    basis: np.ndarray  # |G| x u, prime-field coordinates in kG
    fk: Field

    def rho(self, x: AlgebraElement) -> Matrix:
        """c x c matrix over F_k of left multiplication by x on U_k."""
        comp = self.component
        field = comp.field
        c, d = comp.c, comp.d
        reg = regular_matrix(x).data
        image = matmul(field, reg, self.basis[:, :: d])  # images of b_j
        coords = _coordinates(field, self.basis, image)  # u x c
        out = np.zeros((c, c), dtype=np.int64)
        for i in range(c):
            for j in range(c):
                out[i, j] = self.fk.from_coeffs(coords[i * d : (i + 1) * d, j].tolist())
        return Matrix._wrap(self.fk, out)


def _coordinates(field: Field, basis: np.ndarray, vecs: np.ndarray) -> np.ndarray:
    sol = _solve_arrays(field, basis, vecs)
    if sol is None:
        raise InternalInvariantViolation("vector outside the simple module")
    return sol


def _solve_arrays(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    from .exact_linalg.matrix import solve

    x = solve(Matrix._wrap(field, a), Matrix._wrap(field, b))
    return None if x is None else x.data


def _spin(G: FiniteGroup, field: Field, v: np.ndarray) -> tuple[np.ndarray, list[int]]:
    inv = np.array(G.inverse, dtype=np.int64)
    # g.v has entry v[g^{-1} r] at r
    images = v[G.array[inv]].T  # column g is g.v
    return _echelon_basis(field, images)


def _find_simple_module(comp: WedderburnComponent, seed: int = 0, max_rounds: int = 500) -> SimpleModule:
    G, field = comp.group, comp.field
    p = field.char
    c, d, u = comp.c, comp.d, comp.u
    if d > 1 and p**d > MAX_EXTENSION_SIZE:
        raise InvalidInput(f"F_k of size {p}^{d} exceeds the supported extension size")
    rng = random.Random(seed)
    basis, piv = comp.block_basis
    cur = basis
    cur_piv = piv
    rounds = 0
    while cur.shape[1] > u:
        rounds += 1
        if rounds > max_rounds:
            raise InternalInvariantViolation("could not isolate a simple submodule")
        a = AlgebraElement(G, field, np.array([rng.randrange(p) for _ in range(G.order)]))
        la = matmul(field, regular_matrix(a).data, cur)[cur_piv]  # action on cur
        m = _minpoly_array(field, la)
        best = None
        for f, _ in poly_factor(m, rng.randrange(1 << 30)):
            fa = f.compose_matrix(Matrix._wrap(field, la)).data
            ker = kernel_array(field, fa)
            if best is None or ker.shape[1] < best.shape[1]:
                best = ker
        coeffs = np.array([rng.randrange(p) for _ in range(best.shape[1])], dtype=np.int64)
        v = matmul(field, best, coeffs[:, None])[:, 0]
        if not v.any():
            continue
        v_full = matmul(field, cur, v[:, None])[:, 0]
        span, span_piv = _spin(G, field, v_full)
        if span.shape[1] < cur.shape[1]:
            cur, cur_piv = span, span_piv
    if cur.shape[1] != u:
        raise InternalInvariantViolation("simple submodule has the wrong dimension")
    fk = field if d == 1 else Field(field.char, d, tuple(comp.center_minpoly.coeffs))
    # F_k-basis b_1..b_c with prime basis z^t b_i
    lz = regular_matrix(comp.generator).data
    chosen = np.zeros((G.order, 0), dtype=np.int64)
    for j in range(cur.shape[1]):
        if chosen.shape[1] == u:
            break
        col = cur[:, j : j + 1]
        if chosen.shape[1] and array_rank(field, np.hstack([chosen, col])) == chosen.shape[1]:
            continue
        block = [col]
        for _ in range(d - 1):
            block.append(matmul(field, lz, block[-1]))
        chosen = np.hstack([chosen] + block)
    if array_rank(field, chosen) != u:
        raise InternalInvariantViolation("F_k-basis construction failed")
    return SimpleModule(comp, chosen, fk)


def component_matrix(mu, comp: WedderburnComponent) -> Matrix:
    """mu_k: the Pc x Qc matrix over F_k obtained through the simple module."""
    mu = as_algebra_grid(comp.group, comp.field, mu)
    U = comp.simple_module
    return Matrix.block(U.fk, [[U.rho(x) for x in row] for row in mu])
