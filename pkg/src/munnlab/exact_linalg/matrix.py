"""Dense matrices over finite fields and exact elimination."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from ..errors import InvalidInput
from .field import Field, FieldElement
from .poly import Polynomial


class Matrix:
    """Immutable dense matrix of encoded field elements.

    ``data`` is a read-only int64 array; ``entries`` gives the row-major
    FieldElement view.
    """

    __slots__ = ("field", "data")

    def __init__(self, field: Field, data):
        arr = np.array(data, dtype=np.int64, copy=True)
        if arr.ndim != 2:
            if arr.size == 0:
                arr = arr.reshape(0, 0)
            else:
                raise InvalidInput("matrix data must be two-dimensional")
        if arr.size and (arr.min() < 0 or arr.max() >= field.size):
            raise InvalidInput("matrix entries must be encoded field elements")
        arr.setflags(write=False)
        self.field = field
        self.data = arr

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [[field.coerce(x) if not isinstance(x, (int, np.integer)) or not 0 <= x < field.size
                 else int(x) for x in row] for row in rows]
        if not rows:
            return cls.zeros(field, 0, cols or 0)
        if len({len(r) for r in rows}) > 1:
            raise InvalidInput("ragged matrix rows")
        return cls(field, rows)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def _wrap(cls, field: Field, arr: np.ndarray) -> "Matrix":
        m = cls.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=np.int64)
        arr.setflags(write=False)
        m.field = field
        m.data = arr
        return m

    @classmethod
    def block(cls, field: Field, grid: Sequence[Sequence["Matrix"]]) -> "Matrix":
        return cls._wrap(field, np.block([[m.data for m in row] for row in grid]))

    # -- views -------------------------------------------------------------

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def entries(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.field, int(x)) for x in self.data.ravel())

    def __getitem__(self, idx) -> FieldElement:
        i, j = idx
        return FieldElement(self.field, int(self.data[i, j]))

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def column(self, j: int) -> "Matrix":
        return Matrix._wrap(self.field, self.data[:, j : j + 1])

    def submatrix(self, rows=None, cols=None) -> "Matrix":
        arr = self.data
        if rows is not None:
            arr = arr[list(rows), :]
        if cols is not None:
            arr = arr[:, list(cols)]
        return Matrix._wrap(self.field, arr)

    @property
    def T(self) -> "Matrix":
        return Matrix._wrap(self.field, self.data.T)

    def __repr__(self) -> str:
        return f"Matrix({self.field!r}, {self.tolist()})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self) -> int:
        return hash((self.field, self.shape, self.data.tobytes()))

    def is_zero(self) -> bool:
        return not self.data.any()

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "Matrix") -> None:
        if other.field != self.field:
            raise InvalidInput("matrices over different fields")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise InvalidInput(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix._wrap(self.field, self.field.vadd(self.data, other.data))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise InvalidInput(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix._wrap(self.field, self.field.vsub(self.data, other.data))

    def __neg__(self) -> "Matrix":
        return Matrix._wrap(self.field, self.field.vneg(self.data))

    def scale(self, c) -> "Matrix":
        c = c.code if isinstance(c, FieldElement) else int(c)
        return Matrix._wrap(self.field, self.field.vmul(self.data, c))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise InvalidInput(f"cannot multiply {self.shape} by {other.shape}")
        return Matrix._wrap(self.field, matmul(self.field, self.data, other.data))

    def __pow__(self, e: int) -> "Matrix":
        if self.rows != self.cols:
            raise InvalidInput("power of a non-square matrix")
        result = Matrix.identity(self.field, self.rows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def hstack(self, other: "Matrix") -> "Matrix":
        return Matrix._wrap(self.field, np.hstack([self.data, other.data]))

    def vstack(self, other: "Matrix") -> "Matrix":
        return Matrix._wrap(self.field, np.vstack([self.data, other.data]))


def matmul(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of encoded arrays over ``field``."""
    n = a.shape[1]
    if field.is_prime_field:
        p = field.char
        if n * (p - 1) ** 2 < (1 << 62):
            return (a @ b) % p
        return ((a.astype(object) @ b.astype(object)) % p).astype(np.int64)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(n):
        out = field.vadd(out, field.vmul(a[:, k : k + 1], b[k : k + 1, :]))
    return out


# -- elimination -------------------------------------------------------------


def rref_array(field: Field, arr: np.ndarray, ncols: int | None = None):
    """Reduced row echelon form of a copy of ``arr``.

    Pivots are searched only in the first ``ncols`` columns (all columns by
    default), which lets callers carry augmented blocks along.  Returns the
    reduced array and the list of pivot columns.
    """
    a = np.array(arr, dtype=np.int64, copy=True)
    rows, cols = a.shape
    ncols = cols if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        lead = int(a[r, c])
        if lead != 1:
            a[r] = field.vmul(a[r], field.inv(lead))
        colv = a[:, c].copy()
        colv[r] = 0
        hit = np.flatnonzero(colv)
        if hit.size:
            a[hit] = field.vsub(a[hit], field.vmul(colv[hit, None], a[r][None, :]))
        pivots.append(c)
        r += 1
    return a, pivots


def _rank_small(field: Field, rows: list[list[int]], ncols: int) -> int:
    # pure-Python elimination; faster than numpy below a few dozen entries
    rank = 0
    work = [list(r) for r in rows]
    nrows = len(work)
    for c in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if work[i][c]:
                piv = i
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        inv = field.inv(prow[c])
        for i in range(rank + 1, nrows):
            v = work[i][c]
            if v:
                t = field.mul(v, inv)
                row = work[i]
                for j in range(c, ncols):
                    if prow[j]:
                        row[j] = field.sub(row[j], field.mul(t, prow[j]))
        rank += 1
        if rank == nrows:
            break
    return rank


def array_rank(field: Field, arr: np.ndarray) -> int:
    rows, cols = arr.shape
    if rows == 0 or cols == 0:
        return 0
    if rows * cols <= 36:
        return _rank_small(field, arr.tolist(), cols)
    return len(rref_array(field, arr)[1])


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    arr, piv = rref_array(a.field, a.data)
    return Matrix._wrap(a.field, arr), piv


def mat_rank(a: Matrix) -> int:
    """Rank by exact Gaussian elimination."""
    return array_rank(a.field, a.data)


def kernel_array(field: Field, arr: np.ndarray) -> np.ndarray:
    rows, cols = arr.shape
    red, piv = rref_array(field, arr)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[fc, k] = 1
        for i, pc in enumerate(piv):
            basis[pc, k] = field.neg(int(red[i, fc]))
    return basis


def mat_kernel(a: Matrix) -> Matrix:
    """Matrix whose columns form a basis of {x : a x = 0}."""
    return Matrix._wrap(a.field, kernel_array(a.field, a.data))


def column_space(a: Matrix) -> Matrix:
    """Reduced column-echelon basis of the column space (columns)."""
    red, piv = rref_array(a.field, a.data.T)
    return Matrix._wrap(a.field, red[: len(piv)].T)


def solve(a: Matrix, b: Matrix) -> Matrix | None:
    """One solution X of a X = b, or None if the system is inconsistent."""
    field = a.field
    n = a.cols
    aug = np.hstack([a.data, b.data])
    red, piv = rref_array(field, aug, ncols=n)
    rank = len(piv)
    if red[rank:, n:].any():
        return None
    x = np.zeros((n, b.cols), dtype=np.int64)
    for i, pc in enumerate(piv):
        x[pc] = red[i, n:]
    return Matrix._wrap(field, x)


def inverse(a: Matrix) -> Matrix:
    if a.rows != a.cols:
        raise InvalidInput("only square matrices can be inverted")
    n = a.rows
    aug = np.hstack([a.data, np.eye(n, dtype=np.int64)])
    red, piv = rref_array(a.field, aug, ncols=n)
    if len(piv) != n:
        raise InvalidInput("matrix is singular")
    return Matrix._wrap(a.field, red[:, n:])


def is_invertible(a: Matrix) -> bool:
    return a.rows == a.cols and mat_rank(a) == a.rows


def row_transform(a: Matrix) -> tuple[Matrix, Matrix, list[int]]:
    """Invertible T with T a = rref(a); returns (T, rref(a), pivots)."""
    n = a.rows
    aug = np.hstack([a.data, np.eye(n, dtype=np.int64)])
    red, piv = rref_array(a.field, aug, ncols=a.cols)
    return Matrix._wrap(a.field, red[:, a.cols :]), Matrix._wrap(a.field, red[:, : a.cols]), piv


def rank_normal_form(a: Matrix) -> tuple[int, Matrix, Matrix]:
    """Return (r, T, U) with T, U invertible and T a U = [[I_r, 0], [0, 0]]."""
    t, red, piv = row_transform(a)
    s, _, _ = row_transform(red.T)
    return len(piv), t, s.T


def min_poly(a: Matrix) -> Polynomial:
    """Monic minimal polynomial of a square matrix (Krylov on vec(a^k))."""
    if a.rows != a.cols:
        raise InvalidInput("minimal polynomial of a non-square matrix")
    field = a.field
    n = a.rows
    if n == 0:
        return Polynomial(field, (1,))
    powers = [np.eye(n, dtype=np.int64).ravel()]
    cur = np.eye(n, dtype=np.int64)
    for k in range(1, n + 1):
        cur = matmul(field, cur, a.data)
        powers.append(cur.ravel())
        stack = np.stack(powers, axis=1)
        ker = kernel_array(field, stack)
        if ker.shape[1]:
            vec = ker[:, 0]
            lead = int(vec[-1])
            coeffs = field.vmul(vec, field.inv(lead))
            return Polynomial(field, [int(c) for c in coeffs])
    raise AssertionError("Cayley-Hamilton violated")  # pragma: no cover


def char_poly(a: Matrix) -> Polynomial:
    """Characteristic polynomial as a product of cyclic-block minimal polynomials.

    Unit vectors are spun in turn modulo the span already covered; each new
    cyclic block contributes the relation polynomial of its last vector.
    """
    field = a.field
    n = a.rows
    result = Polynomial(field, (1,))
    covered = np.zeros((n, 0), dtype=np.int64)
    for i in range(n):
        if covered.shape[1] == n:
            break
        e = np.zeros((n, 1), dtype=np.int64)
        e[i, 0] = 1
        if covered.shape[1] and array_rank(field, np.hstack([covered, e])) == covered.shape[1]:
            continue
        # spin e modulo the span already covered
        vecs = [e[:, 0]]
        while True:
            nxt = matmul(field, a.data, vecs[-1][:, None])[:, 0]
            test = np.hstack([covered, np.stack(vecs + [nxt], axis=1)])
            if array_rank(field, test) == test.shape[1]:
                vecs.append(nxt)
                continue
            break
        block = np.hstack([covered, np.stack(vecs, axis=1)])
        # relation: nxt = covered*y + sum c_j vecs_j
        sol = solve(Matrix._wrap(field, block), Matrix._wrap(field, nxt[:, None]))
        cs = sol.data[covered.shape[1] :, 0]
        factor = Polynomial(field, [field.neg(int(c)) for c in cs] + [1])
        result = result * factor
        covered = block
    return result


def as_matrix(field: Field, rows: Iterable[Iterable]) -> Matrix:
    return Matrix.from_rows(field, [list(r) for r in rows])
