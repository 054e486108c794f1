"""Finite fields with integer-encoded elements.

An element of F_{p^d} with coefficient vector (c_0, ..., c_{d-1}) over the
prime field (power basis of the root of ``modulus``) is stored as the
integer ``sum(c_i * p**i)``.  Degree-1 fields are residues mod p.

Scalar operations take and return Python ints.  The ``v*`` variants accept
numpy integer arrays and broadcast; matrices are built on those.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from ..errors import InvalidInput

# Extension-field arithmetic is table driven; larger fields are rejected.
MAX_EXTENSION_SIZE = 1 << 16
# Prime fields keep products inside int64.
MAX_PRIME = (1 << 31) - 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for k in range(3, math.isqrt(n) + 1, 2):
        if n % k == 0:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def _pmul_mod(a: Sequence[int], b: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    """Product of two coefficient lists over F_p, reduced by a monic modulus."""
    d = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, d - 1, -1):
        lead = prod[k]
        if lead:
            for i in range(d):
                prod[k - d + i] = (prod[k - d + i] - lead * mod[i]) % p
    return (prod + [0] * d)[:d]


@dataclass(frozen=True)
class Field:
    """The finite field F_p[x]/(modulus).

    ``modulus`` is a monic irreducible polynomial over F_p, coefficients
    listed from the constant term up.  For degree 1 it is ``x``.
    """

    char: int
    degree: int = 1
    modulus: tuple[int, ...] = (0, 1)

    def __post_init__(self):
        if not isinstance(self.char, int) or not is_prime(self.char):
            raise InvalidInput(f"characteristic {self.char!r} is not prime")
        if self.char > MAX_PRIME:
            raise InvalidInput(f"characteristic {self.char} exceeds {MAX_PRIME}")
        if self.degree < 1:
            raise InvalidInput("field degree must be positive")
        mod = tuple(int(c) % self.char for c in self.modulus)
        object.__setattr__(self, "modulus", mod)
        if len(mod) != self.degree + 1 or mod[-1] != 1:
            raise InvalidInput("modulus must be monic of the field degree")
        if self.degree == 1:
            if mod != (0, 1):
                raise InvalidInput("degree-1 fields use the modulus x")
            return
        if self.char ** self.degree > MAX_EXTENSION_SIZE:
            raise InvalidInput(
                f"F_{self.char}^{self.degree} is larger than {MAX_EXTENSION_SIZE} elements"
            )
        from .poly import Polynomial

        if not Polynomial(Field(self.char), mod).is_irreducible():
            raise InvalidInput(f"modulus {mod} is reducible over F_{self.char}")

    # -- basic facts -------------------------------------------------------

    @property
    def size(self) -> int:
        return self.char**self.degree

    @property
    def is_prime_field(self) -> bool:
        return self.degree == 1

    @property
    def prime_field(self) -> "Field":
        return self if self.degree == 1 else Field(self.char)

    def __repr__(self) -> str:
        if self.degree == 1:
            return f"Field(F_{self.char})"
        return f"Field(F_{self.char}^{self.degree}, modulus={self.modulus})"

    def elements(self) -> range:
        return range(self.size)

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise InvalidInput("element belongs to a different field")
            return value
        return FieldElement(self, self.coerce(value))

    def coerce(self, value) -> int:
        """Encode an int (image of the integers) or a coefficient sequence."""
        if isinstance(value, FieldElement):
            return value.code
        if isinstance(value, (int, np.integer)):
            return int(value) % self.char
        return self.from_coeffs(value)

    def from_coeffs(self, coeffs: Iterable[int]) -> int:
        coeffs = [int(c) % self.char for c in coeffs]
        if len(coeffs) > self.degree:
            coeffs = _pmul_mod(coeffs, [1], self.modulus, self.char)
        code = 0
        for c in reversed(coeffs):
            code = code * self.char + c
        return code

    def to_coeffs(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.degree):
            code, c = divmod(code, self.char)
            out.append(c)
        return tuple(out)

    def random_element(self, rng: random.Random, nonzero: bool = False) -> int:
        lo = 1 if nonzero else 0
        return rng.randrange(lo, self.size)

    # -- tables for extension fields --------------------------------------

    @cached_property
    def _digits(self) -> np.ndarray:
        codes = np.arange(self.size, dtype=np.int64)
        weights = self._weights
        return (codes[:, None] // weights[None, :]) % self.char

    @cached_property
    def _weights(self) -> np.ndarray:
        return np.array([self.char**i for i in range(self.degree)], dtype=np.int64)

    @cached_property
    def _exp_log(self) -> tuple[np.ndarray, np.ndarray]:
        q = self.size
        gen = self._primitive_element()
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        gcoef = list(self.to_coeffs(gen))
        cur = [1] + [0] * (self.degree - 1)
        for i in range(q - 1):
            code = self.from_coeffs(cur)
            exp[i] = code
            log[code] = i
            cur = _pmul_mod(cur, gcoef, self.modulus, self.char)
        exp[q - 1 :] = exp[: q - 1]
        return exp, log

    def _primitive_element(self) -> int:
        q = self.size
        targets = [(q - 1) // r for r in prime_factors(q - 1)]
        for cand in range(2, q):
            coeffs = list(self.to_coeffs(cand))
            if all(self._slow_pow(coeffs, t) != [1] + [0] * (self.degree - 1) for t in targets):
                return cand
        raise AssertionError("no primitive element found")  # pragma: no cover

    def _slow_pow(self, coeffs: list[int], e: int) -> list[int]:
        result = [1] + [0] * (self.degree - 1)
        base = coeffs
        while e:
            if e & 1:
                result = _pmul_mod(result, base, self.modulus, self.char)
            base = _pmul_mod(base, base, self.modulus, self.char)
            e >>= 1
        return result

    @cached_property
    def _inv_table(self) -> np.ndarray | None:
        if self.degree > 1 or self.char > (1 << 20):
            return None
        p = self.char
        table = np.zeros(p, dtype=np.int64)
        for a in range(1, p):
            table[a] = pow(a, p - 2, p)
        return table

    # -- scalar arithmetic -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.degree == 1:
            return (a + b) % self.char
        d = self._digits
        return int(((d[a] + d[b]) % self.char) @ self._weights)

    def neg(self, a: int) -> int:
        if self.degree == 1:
            return (-a) % self.char
        return int(((-self._digits[a]) % self.char) @ self._weights)

    def sub(self, a: int, b: int) -> int:
        if self.degree == 1:
            return (a - b) % self.char
        d = self._digits
        return int(((d[a] - d[b]) % self.char) @ self._weights)

    def mul(self, a: int, b: int) -> int:
        if self.degree == 1:
            return (a * b) % self.char
        if a == 0 or b == 0:
            return 0
        exp, log = self._exp_log
        return int(exp[log[a] + log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        if self.degree == 1:
            return pow(a, self.char - 2, self.char)
        exp, log = self._exp_log
        return int(exp[(self.size - 1 - log[a]) % (self.size - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.degree == 1:
            return pow(a, e, self.char)
        if a == 0:
            return 0 if e else 1
        exp, log = self._exp_log
        return int(exp[(int(log[a]) * e) % (self.size - 1)])

    def frobenius_root(self, a: int) -> int:
        """The unique b with b**char == a."""
        if self.degree == 1:
            return a
        return self.pow(a, self.size // self.char)

    # -- vectorised arithmetic ---------------------------------------------

    def vadd(self, a, b):
        if self.degree == 1:
            return (np.asarray(a) + b) % self.char
        d = self._digits
        return ((d[a] + d[b]) % self.char) @ self._weights

    def vsub(self, a, b):
        if self.degree == 1:
            return (np.asarray(a) - b) % self.char
        d = self._digits
        return ((d[a] - d[b]) % self.char) @ self._weights

    def vneg(self, a):
        if self.degree == 1:
            return (-np.asarray(a)) % self.char
        return ((-self._digits[a]) % self.char) @ self._weights

    def vmul(self, a, b):
        if self.degree == 1:
            return (np.asarray(a) * b) % self.char
        a = np.asarray(a)
        b = np.asarray(b)
        exp, log = self._exp_log
        out = exp[log[a] + log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vinv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("zero has no inverse")
        if self.degree == 1:
            table = self._inv_table
            if table is not None:
                return table[a]
            return np.vectorize(lambda x: pow(int(x), self.char - 2, self.char))(a)
        exp, log = self._exp_log
        return exp[(self.size - 1 - log[a]) % (self.size - 1)]


@dataclass(frozen=True)
class FieldElement:
    field: Field
    code: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.to_coeffs(self.code)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise InvalidInput("mixed fields")
            return other.code
        return self.field.coerce(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.code, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.code, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.code, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.code, self._other(other)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.code))

    def __bool__(self) -> bool:
        return self.code != 0

    def __int__(self) -> int:
        return self.code

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == self.field.coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.code))

    def __repr__(self) -> str:
        if self.field.degree == 1:
            return f"{self.code} (mod {self.field.char})"
        return f"{self.coeffs} in F_{self.field.char}^{self.field.degree}"


def field_make(char: int, degree: int = 1, seed: int = 0) -> Field:
    """Return F_{char^degree} with a canonical irreducible modulus.

    Monic candidates are scanned in increasing order of their encoded
    lower coefficients; after a bounded scan a seeded random search takes
    over.  Both are deterministic for fixed arguments.
    """
    if not isinstance(char, int) or not is_prime(char):
        raise InvalidInput(f"characteristic {char!r} is not prime")
    if not isinstance(degree, int) or degree < 1:
        raise InvalidInput(f"degree {degree!r} must be a positive integer")
    if degree == 1:
        return Field(char)
    if char**degree > MAX_EXTENSION_SIZE:
        raise InvalidInput(f"F_{char}^{degree} is larger than {MAX_EXTENSION_SIZE} elements")
    from .poly import Polynomial

    base = Field(char)
    scan_limit = min(char**degree, 64 * degree)

    def digits(code: int) -> list[int]:
        out = []
        for _ in range(degree):
            code, c = divmod(code, char)
            out.append(c)
        return out

    for code in range(scan_limit):
        coeffs = digits(code) + [1]
        if Polynomial(base, coeffs).is_irreducible():
            return Field(char, degree, tuple(coeffs))
    rng = random.Random(seed)
    while True:
        coeffs = digits(rng.randrange(char**degree)) + [1]
        if Polynomial(base, coeffs).is_irreducible():
            return Field(char, degree, tuple(coeffs))
