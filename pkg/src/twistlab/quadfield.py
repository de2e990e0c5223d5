"""Quadratic fields Q(sqrt(d)) and exact arithmetic with their elements.

Covers discriminants, ramification and splitting of rational primes, root
of unity counts, the Heegner hypothesis test, and square roots of field
elements, all in exact rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .arith import factorize, is_prime, kronecker, squarefree_part
from .errors import NotPrime, TrivialExtension, ZeroInput


class Splitting(Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


@dataclass(frozen=True)
class QuadraticField:
    """Q(sqrt(d)) for squarefree d != 0, 1."""

    d: int
    discriminant: int
    imaginary: bool
    ramified_primes: frozenset[int]
    two_u: int  # number of roots of unity

    @property
    def u(self) -> int:
        return self.two_u // 2

    def __str__(self) -> str:
        return f"Q(sqrt({self.d}))"


@lru_cache(maxsize=4096)
def make_field(d: int) -> QuadraticField:
    """Build Q(sqrt(d)); d is replaced by its squarefree part."""
    if d == 0:
        raise ZeroInput("d must be nonzero")
    d0 = squarefree_part(d).squarefree
    if d0 == 1:
        raise TrivialExtension(f"sqrt({d}) is rational")
    disc = d0 if d0 % 4 == 1 else 4 * d0
    ramified = frozenset(factorize(disc).primes())
    two_u = 6 if d0 == -3 else 4 if d0 == -1 else 2
    return QuadraticField(d0, disc, d0 < 0, ramified, two_u)


def splitting(field: QuadraticField, p: int) -> Splitting:
    """Behaviour of the rational prime p in the field."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if field.discriminant % p == 0:
        return Splitting.RAMIFIED
    return Splitting.SPLIT if kronecker(field.discriminant, p) == 1 else Splitting.INERT


@dataclass(frozen=True)
class HeegnerReport:
    """Outcome of the Heegner hypothesis test with its per-prime evidence."""

    holds: bool
    reason: str | None
    splittings: tuple[tuple[int, Splitting], ...]


def heegner_check(field: QuadraticField, conductor: int) -> HeegnerReport:
    """Full Heegner test: field imaginary and every p | conductor split."""
    if conductor < 1:
        raise ZeroInput("conductor must be >= 1")
    splits = tuple((p, splitting(field, p)) for p in factorize(conductor).primes())
    if not field.imaginary:
        return HeegnerReport(False, "not imaginary", splits)
    for p, s in splits:
        if s is not Splitting.SPLIT:
            return HeegnerReport(False, f"{p} {s.value}", splits)
    return HeegnerReport(True, None, splits)


def heegner_hypothesis(field: QuadraticField, conductor: int) -> bool:
    return heegner_check(field, conductor).holds


def _rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a rational, or None."""
    if q < 0:
        return None
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class QuadElement:
    """a + b*sqrt(d) with rational a, b."""

    a: Fraction
    b: Fraction
    field: QuadraticField

    def _lift(self, other) -> "QuadElement | None":
        if isinstance(other, QuadElement):
            if other.field != self.field:
                raise ValueError("mixed quadratic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElement(Fraction(other), Fraction(0), self.field)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadElement(self.a + o.a, self.b + o.b, self.field)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(-self.a, -self.b, self.field)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        d = self.field.d
        return QuadElement(
            self.a * o.a + d * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.field,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero element")
        conj = o.conjugate()
        num = self * conj
        return QuadElement(num.a / n, num.b / n, self.field)

    def conjugate(self) -> "QuadElement":
        return QuadElement(self.a, -self.b, self.field)

    def norm(self) -> Fraction:
        return self.a * self.a - self.field.d * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def __str__(self) -> str:
        return f"{self.a} + {self.b}*sqrt({self.field.d})"


def element(field: QuadraticField, a, b=0) -> QuadElement:
    return QuadElement(Fraction(a), Fraction(b), field)


def is_square_in_field(x: QuadElement) -> QuadElement | None:
    """A square root of x in Q(sqrt(d)), or None.

    Sign convention: the first nonzero coordinate of the returned root is
    positive, which makes the result deterministic.
    """
    F = x.field
    d = F.d
    if x.is_zero():
        return element(F, 0)
    if x.b == 0:
        r = _rational_sqrt(x.a)
        if r is not None:
            return element(F, abs(r))
        r = _rational_sqrt(x.a / d)
        if r is not None:
            return element(F, 0, abs(r))
        return None
    n = _rational_sqrt(x.norm())
    if n is None:
        return None
    for half in ((x.a + n) / 2, (x.a - n) / 2):
        s = _rational_sqrt(half)
        if s is not None and s != 0:
            root = QuadElement(s, x.b / (2 * s), F)
            if root.a < 0 or (root.a == 0 and root.b < 0):
                root = -root
            assert (root * root).a == x.a and (root * root).b == x.b
            return root
    return None
