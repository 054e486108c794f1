"""Univariate polynomials over a finite field, with factorisation.

Factorisation runs squarefree decomposition, distinct-degree splitting and
Cantor-Zassenhaus equal-degree splitting driven by a seeded generator.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from ..errors import InvalidInput
from .field import Field, FieldElement, prime_factors


class Polynomial:
    """Polynomial with coefficients from low to high degree.

    Coefficients may be FieldElements or encoded ints; ints outside
    ``range(field.size)`` are read as integers and reduced mod the
    characteristic, so ``Polynomial(F, [-1, 0, 0, 1])`` is x^3 - 1.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable = ()):
        q = field.size
        cs = [
            c.code if isinstance(c, FieldElement) else (int(c) if 0 <= c < q else int(c) % field.char)
            for c in coeffs
        ]
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs: tuple[int, ...] = tuple(cs)

    # -- constructors ------------------------------------------------------

    @classmethod
    def x(cls, field: Field) -> "Polynomial":
        return cls(field, (0, 1))

    @classmethod
    def constant(cls, field: Field, c: int) -> "Polynomial":
        return cls(field, (c,))

    # -- basics ------------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = str(c) if self.field.degree == 1 else f"[{c}]"
            if i == 0:
                terms.append(cs)
            else:
                mon = "x" if i == 1 else f"x^{i}"
                terms.append(mon if c == 1 else f"{cs}*{mon}")
        return " + ".join(terms)

    def sort_key(self) -> tuple:
        return (self.degree, self.coeffs[::-1])

    # -- arithmetic --------------------------------------------------------

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial(self.field, (other,))

    def __add__(self, other) -> "Polynomial":
        other = self._lift(other)
        f = self.field
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Polynomial(
            f,
            [f.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)],
        )

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._lift(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = self._lift(other)
        f = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial(f)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = f.add(out[i + j], f.mul(x, y))
        return Polynomial(f, out)

    __rmul__ = __mul__

    def scale(self, c: int) -> "Polynomial":
        return Polynomial(self.field, [self.field.mul(c, x) for x in self.coeffs])

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lead))

    def __divmod__(self, other: "Polynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        db = other.degree
        inv_lead = f.inv(other.lead)
        if len(rem) - 1 < db:
            return Polynomial(f), self
        quo = [0] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if not c:
                continue
            t = f.mul(c, inv_lead)
            quo[k - db] = t
            for i, bc in enumerate(other.coeffs):
                if bc:
                    rem[k - db + i] = f.sub(rem[k - db + i], f.mul(t, bc))
        return Polynomial(f, quo), Polynomial(f, rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e: int) -> "Polynomial":
        result = Polynomial(self.field, (1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def powmod(self, e: int, mod: "Polynomial") -> "Polynomial":
        result = Polynomial(self.field, (1,)) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def derivative(self) -> "Polynomial":
        f = self.field
        return Polynomial(f, [f.mul(f.coerce(i), c) for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, value: int) -> int:
        f = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, value), c)
        return acc

    def compose_matrix(self, a):
        """Evaluate at a square Matrix by Horner's rule."""
        from .matrix import Matrix

        n = a.rows
        acc = Matrix.zeros(a.field, n, n)
        ident = Matrix.identity(a.field, n)
        for c in reversed(self.coeffs):
            acc = acc @ a + ident.scale(c)
        return acc

    # -- gcd and friends ---------------------------------------------------

    def gcd(self, other: "Polynomial") -> "Polynomial":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other: "Polynomial"):
        """Return (g, s, t) with s*self + t*other = g monic."""
        f = self.field
        r0, r1 = self, other
        s0, s1 = Polynomial(f, (1,)), Polynomial(f)
        t0, t1 = Polynomial(f), Polynomial(f, (1,))
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero():
            return r0, s0, t0
        inv = f.inv(r0.lead)
        return r0.scale(inv), s0.scale(inv), t0.scale(inv)

    def inverse_mod(self, mod: "Polynomial") -> "Polynomial":
        g, s, _ = self.xgcd(mod)
        if not g.is_one():
            raise ZeroDivisionError("not invertible modulo the given polynomial")
        return s % mod

    # -- irreducibility and factorisation ----------------------------------

    def is_irreducible(self) -> bool:
        """Rabin's test over F_q."""
        n = self.degree
        if n < 1:
            return False
        if n == 1:
            return True
        f = self.monic()
        q = self.field.size
        x = Polynomial.x(self.field)

        def frob_power(k: int) -> "Polynomial":
            h = x % f
            for _ in range(k):
                h = h.powmod(q, f)
            return h

        if not ((frob_power(n) - x) % f).is_zero():
            return False
        for r in prime_factors(n):
            h = frob_power(n // r)
            if not f.gcd(h - x).is_one():
                return False
        return True

    def factor(self, seed: int = 0) -> list[tuple["Polynomial", int]]:
        return poly_factor(self, seed)


def _pth_root(f: Polynomial) -> Polynomial:
    p = f.field.char
    return Polynomial(
        f.field, [f.field.frobenius_root(c) for c in f.coeffs[::p]]
    )


def squarefree_decomposition(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Monic squarefree, pairwise coprime factors with multiplicities."""
    f = f.monic()
    out: list[tuple[Polynomial, int]] = []
    if f.degree < 1:
        return out
    p = f.field.char
    c = f.gcd(f.derivative())
    w = f // c
    i = 1
    while not w.is_one():
        y = w.gcd(c)
        fac = w // y
        if not fac.is_one():
            out.append((fac.monic(), i))
        w = y
        c = c // y
        i += 1
    if not c.is_one():
        for g, j in squarefree_decomposition(_pth_root(c)):
            out.append((g, j * p))
    return out


def distinct_degree(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Split a monic squarefree f into products of irreducibles of equal degree."""
    q = f.field.size
    x = Polynomial.x(f.field)
    out = []
    rest = f
    h = x % rest
    i = 1
    while rest.degree >= 2 * i:
        h = h.powmod(q, rest)
        g = rest.gcd(h - x)
        if not g.is_one():
            out.append((g, i))
            rest = rest // g
            h = h % rest
        i += 1
    if rest.degree >= 1:
        out.append((rest.monic(), rest.degree))
    return out


def equal_degree(f: Polynomial, d: int, rng: random.Random) -> list[Polynomial]:
    """Cantor-Zassenhaus splitting of a product of degree-d irreducibles."""
    n = f.degree
    if n == d:
        return [f.monic()]
    field = f.field
    q = field.size
    while True:
        a = Polynomial(field, [rng.randrange(q) for _ in range(n)])
        if a.degree < 1:
            continue
        g = f.gcd(a)
        if 0 < g.degree < n:
            break
        if q % 2:
            b = a.powmod((q**d - 1) // 2, f) - 1
        else:
            # absolute trace of a over F_2, summed across the F_{q^d} layer
            k = q.bit_length() - 1
            b = Polynomial(field)
            t = a % f
            for _ in range(k * d):
                b = b + t
                t = (t * t) % f
        g = f.gcd(b)
        if 0 < g.degree < n:
            break
    return equal_degree(g, d, rng) + equal_degree(f // g, d, rng)


def poly_factor(f: Polynomial, seed: int = 0) -> list[tuple[Polynomial, int]]:
    """Monic irreducible factors of f with multiplicities, sorted canonically.

    The product of the factors to their multiplicities equals ``f.monic()``.
    """
    if f.is_zero():
        raise InvalidInput("cannot factor the zero polynomial")
    rng = random.Random(seed)
    counts: dict[Polynomial, int] = {}
    for sqf, mult in squarefree_decomposition(f):
        for block, d in distinct_degree(sqf):
            for irr in equal_degree(block, d, rng):
                counts[irr] = counts.get(irr, 0) + mult
    return sorted(counts.items(), key=lambda item: item[0].sort_key())


def poly_from_roots(field: Field, roots: Sequence[int]) -> Polynomial:
    out = Polynomial(field, (1,))
    for r in roots:
        out = out * Polynomial(field, (field.neg(r), 1))
    return out
