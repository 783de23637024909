"""
Arithmetic in GF(q), q = p**m.

Elements are integers in ``[0, q)``: the base-p digits of the integer are the
coefficients of the polynomial representative, constant term in the least
significant digit.  For q = 16 with modulus x^4 + x + 1 the element ``x^3 + 1``
is therefore ``0b1001 = 9``.

Multiplication goes through exp/log tables built once per field from a
primitive element; fields are capped at q <= 2**16 so the tables stay small.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Sequence

import numpy as np

from .exceptions import FieldOverflow, MixedFields, NonPrimeP, NotPrimePower, ZeroInverse

MAX_ORDER = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, m)`` with ``q == p**m`` and p prime, or None."""
    if q < 2:
        return None
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q  # q itself is prime
    m = 0
    r = q
    while r % p == 0:
        r //= p
        m += 1
    return (p, m) if r == 1 else None


# --- polynomials over GF(p), coefficient tuples with constant term first ---

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo b over GF(p); b must have a nonzero leading term."""
    a = _trim(list(a))
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p) if p > 2 else 1
    while len(a) - 1 >= db:
        shift = len(a) - 1 - db
        c = a[-1] * inv_lead % p
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        _trim(a)
    return a


def _poly_from_rep(rep: int, p: int) -> list[int]:
    digits = []
    while rep:
        rep, d = divmod(rep, p)
        digits.append(d)
    return digits


def _poly_to_rep(coeffs: Sequence[int], p: int) -> int:
    rep = 0
    for c in reversed(coeffs):
        rep = rep * p + c
    return rep


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Trial division of f by every monic polynomial of degree 1..deg(f)//2."""
    m = len(f) - 1
    if m < 1:
        return False
    for d in range(1, m // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _poly_rem(f, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible polynomial of degree m.

    Lexicographic order compares coefficients from the highest degree down,
    which is the same as ordering by the base-p integer encoding.
    """
    for rep in range(p**m, 2 * p**m):
        f = _poly_from_rep(rep, p)
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError(f"no irreducible polynomial of degree {m} over GF({p})")


@dataclass(frozen=True)
class FieldSpec:
    """The finite field GF(p**m) with a fixed monic irreducible modulus."""

    p: int
    m: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise NonPrimeP(f"{self.p} is not prime")
        if self.m < 1:
            raise ValueError("extension degree must be >= 1")
        if self.p**self.m > MAX_ORDER:
            raise FieldOverflow(f"q = {self.p}**{self.m} exceeds {MAX_ORDER}")
        mod = tuple(self.modulus)
        if len(mod) != self.m + 1 or mod[-1] != 1 or any(not 0 <= c < self.p for c in mod):
            raise ValueError(f"modulus {mod} is not a monic degree-{self.m} polynomial over GF({self.p})")
        if not is_irreducible(mod, self.p):
            raise ValueError(f"modulus {mod} is reducible over GF({self.p})")
        object.__setattr__(self, "modulus", mod)

    @property
    def q(self) -> int:
        return self.p**self.m

    def __repr__(self):
        return f"GF({self.q})"

    # table construction

    def _mul_slow(self, a: int, b: int) -> int:
        p = self.p
        pa, pb = _poly_from_rep(a, p), _poly_from_rep(b, p)
        if not pa or not pb:
            return 0
        prod = [0] * (len(pa) + len(pb) - 1)
        for i, x in enumerate(pa):
            for j, y in enumerate(pb):
                prod[i + j] = (prod[i + j] + x * y) % p
        return _poly_to_rep(_poly_rem(prod, self.modulus, p), p)

    @cached_property
    def _tables(self) -> tuple[np.ndarray, np.ndarray, int]:
        q = self.q
        order = q - 1
        factors = [f for f in range(2, order + 1) if order % f == 0 and is_prime(f)]
        for g in range(2 if q > 2 else 1, q):
            if all(self._pow_slow(g, order // f) != 1 for f in factors):
                break
        else:
            raise AssertionError(f"{self!r} has no primitive element")
        exp = np.zeros(2 * order, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = 1
        for k in range(order):
            exp[k] = x
            log[x] = k
            x = self._mul_slow(x, g)
        exp[order:] = exp[:order]
        return exp, log, g

    def _pow_slow(self, a: int, e: int) -> int:
        r, base = 1, a
        while e:
            if e & 1:
                r = self._mul_slow(r, base)
            base = self._mul_slow(base, base)
            e >>= 1
        return r

    @property
    def generator(self) -> int:
        return self._tables[2]

    # scalar arithmetic on reps

    def _check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise ValueError(f"{a} is not an element of {self!r}")
        return a

    def add(self, a: int, b: int) -> int:
        self._check(a), self._check(b)
        p = self.p
        if p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % p
        r, scale = 0, 1
        while a or b:
            r += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return r

    def neg(self, a: int) -> int:
        self._check(a)
        p = self.p
        if p == 2:
            return a
        r, scale = 0, 1
        while a:
            r += (-(a % p) % p) * scale
            a //= p
            scale *= p
        return r

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        self._check(a), self._check(b)
        if a == 0 or b == 0:
            return 0
        exp, log, _ = self._tables
        return int(exp[log[a] + log[b]])

    def inv(self, a: int) -> int:
        self._check(a)
        if a == 0:
            raise ZeroInverse(f"0 has no inverse in {self!r}")
        exp, log, _ = self._tables
        return int(exp[(self.q - 1 - log[a]) % (self.q - 1)])

    def pow(self, a: int, e: int) -> int:
        self._check(a)
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        exp, log, _ = self._tables
        return int(exp[(int(log[a]) * e) % (self.q - 1)])

    # vectorised arithmetic, used by the code construction

    def add_array(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        p = self.p
        if p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        scale = 1
        for _ in range(self.m):
            out += ((a % p + b % p) % p) * scale
            a, b = a // p, b // p
            scale *= p
        return out

    def mul_array(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        exp, log, _ = self._tables
        a, b = np.broadcast_arrays(a, b)
        nz = (a != 0) & (b != 0)
        out = np.zeros(a.shape, dtype=np.int64)
        out[nz] = exp[log[a[nz]] + log[b[nz]]]
        return out

    def element(self, rep: int) -> "FieldElement":
        return FieldElement(self, self._check(int(rep)))

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, r) for r in range(self.q)]


def field_new(p: int, m: int = 1) -> FieldSpec:
    """Build GF(p**m) with the lexicographically smallest irreducible modulus.

    >>> field_new(2, 4).modulus
    (1, 1, 0, 0, 1)
    """
    if not is_prime(p):
        raise NonPrimeP(f"{p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be >= 1")
    if p**m > MAX_ORDER:
        raise FieldOverflow(f"q = {p}**{m} exceeds {MAX_ORDER}")
    modulus = (0, 1) if m == 1 else smallest_irreducible(p, m)
    return FieldSpec(p, m, modulus)


def field_of_order(q: int) -> FieldSpec:
    pm = prime_power(q)
    if pm is None:
        raise NotPrimePower(f"{q} is not a prime power")
    return field_new(*pm)


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    rep: int

    def __post_init__(self):
        if not 0 <= self.rep < self.field.q:
            raise ValueError(f"rep {self.rep} out of range for {self.field!r}")

    def _same(self, other: "FieldElement") -> FieldSpec:
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise MixedFields(f"{self.field!r} vs {other.field!r}")
        return self.field

    def __add__(self, other):
        f = self._same(other)
        if f is NotImplemented:
            return f
        return FieldElement(f, f.add(self.rep, other.rep))

    def __sub__(self, other):
        f = self._same(other)
        if f is NotImplemented:
            return f
        return FieldElement(f, f.sub(self.rep, other.rep))

    def __mul__(self, other):
        f = self._same(other)
        if f is NotImplemented:
            return f
        return FieldElement(f, f.mul(self.rep, other.rep))

    def __truediv__(self, other):
        f = self._same(other)
        if f is NotImplemented:
            return f
        return FieldElement(f, f.mul(self.rep, f.inv(other.rep)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.rep))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.rep, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.rep))

    def __int__(self):
        return self.rep

    def __repr__(self):
        return f"{self.field!r}({self.rep})"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def eval_poly(coeffs: Sequence[FieldElement], x: FieldElement) -> FieldElement:
    """Horner evaluation of ``sum(coeffs[i] * x**i)``."""
    if not coeffs:
        raise ValueError("empty coefficient list")
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    if acc.field != x.field:
        raise MixedFields(f"{acc.field!r} vs {x.field!r}")
    return acc
