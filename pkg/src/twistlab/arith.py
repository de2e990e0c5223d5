"""Exact integer and rational arithmetic.

Factorization with a fixed work budget, p-adic valuations, squarefree
decomposition, and the Kronecker symbol.  Everything here is pure and
thread-safe; no floating point is used anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import BothZero, FactorizationLimitExceeded, NotPrime, ZeroInput

#: Documented desk-scale ceiling for factorization inputs.
FACTOR_INPUT_LIMIT = 1 << 96

_TRIAL_BOUND = 10**6
_RHO_BUDGET = 2_000_000  # Brent iterations per stuck cofactor

# The first twelve bases are a proven deterministic test below 3.3e24;
# the remaining bases guard the rest of the range up to FACTOR_INPUT_LIMIT.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59)


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    sieve = bytearray([1]) * (_TRIAL_BOUND + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(_TRIAL_BOUND) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def primes_below(bound: int) -> tuple[int, ...]:
    """All primes < bound, for bound <= 10^6."""
    if bound > _TRIAL_BOUND + 1:
        raise ValueError(f"prime table only reaches {_TRIAL_BOUND}")
    table = _small_primes()
    lo, hi = 0, len(table)
    while lo < hi:
        mid = (lo + hi) // 2
        if table[mid] < bound:
            lo = mid + 1
        else:
            hi = mid
    return table[:lo]


@lru_cache(maxsize=65536)
def is_prime(n: int) -> bool:
    """Miller-Rabin primality test, deterministic on the supported range."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int, c: int, budget: int) -> int | None:
    """One Brent-cycle attempt at splitting composite odd n; None if stuck."""
    y, m = 2, 128
    g = r = q = 1
    spent = 0
    x = ys = y
    while g == 1 and spent < budget:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            steps = min(m, r - k)
            for _ in range(steps):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += steps
            spent += steps
        r *= 2
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
    return g if 1 < g < n else None


@dataclass(frozen=True)
class PrimeFactorization:
    """Signed factorization n = sign * prod(p^e) with strictly increasing p."""

    factors: tuple[tuple[int, int], ...]
    sign: int

    def value(self) -> int:
        out = self.sign
        for p, e in self.factors:
            out *= p**e
        return out

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0


@dataclass(frozen=True)
class SquarefreeDecomposition:
    """n = squarefree * cofactor**2 with squarefree free of repeated primes."""

    squarefree: int
    cofactor: int


def factorize(n: int) -> PrimeFactorization:
    """Exact factorization of a nonzero integer below the desk-scale limit."""
    if n == 0:
        raise ZeroInput("cannot factor 0")
    if abs(n) >= FACTOR_INPUT_LIMIT:
        raise FactorizationLimitExceeded(f"|{n}| >= 2^96")
    return _factorize_core(n)


@lru_cache(maxsize=65536)
def _factorize_core(n: int) -> PrimeFactorization:
    """factorize without the input-size gate; still rho-budget limited.

    Internal pipelines (e.g. raw twist discriminants before minimalization)
    produce large but very smooth integers; they get the same machinery and
    the same honest FactorizationLimitExceeded if the budget runs out.
    """
    sign = 1 if n > 0 else -1
    m = abs(n)
    counts: dict[int, int] = {}
    for p in _small_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            counts[p] = e
            if m > 1 and is_prime(m):
                break
    if m > 1:
        stack = [m]
        while stack:
            v = stack.pop()
            if is_prime(v):
                counts[v] = counts.get(v, 0) + 1
                continue
            d = None
            for c in range(1, 21):
                d = _brent_rho(v, c, _RHO_BUDGET)
                if d is not None:
                    break
            if d is None:
                raise FactorizationLimitExceeded(
                    f"rho budget exhausted on cofactor {v}"
                )
            stack.append(d)
            stack.append(v // d)
    return PrimeFactorization(tuple(sorted(counts.items())), sign)


def squarefree_part(n: int) -> SquarefreeDecomposition:
    """Split n as squarefree * square; the squarefree part keeps n's sign."""
    if n == 0:
        raise ZeroInput("0 has no squarefree part")
    fac = factorize(n)
    sf, co = fac.sign, 1
    for p, e in fac.factors:
        if e % 2:
            sf *= p
        co *= p ** (e // 2)
    return SquarefreeDecomposition(sf, co)


def _int_valuation(m: int, p: int) -> int:
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


def valuation(x: Fraction | int, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if x == 0:
        raise ZeroInput("valuation of 0 is undefined")
    if isinstance(x, Fraction):
        return _int_valuation(x.numerator, p) - _int_valuation(x.denominator, p)
    return _int_valuation(int(x), p)


def _jacobi(a: int, n: int) -> int:
    """Jacobi symbol for odd positive n."""
    a %= n
    t = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                t = -t
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            t = -t
        a %= n
    return t if n == 1 else 0


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), extending Jacobi/Legendre to all integers."""
    if a == 0 and n == 0:
        raise BothZero("kronecker(0, 0) is undefined")
    if n == 0:
        return 1 if a in (1, -1) else 0
    if a == 0:
        return 1 if abs(n) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    e = 0
    while n % 2 == 0:
        n //= 2
        e += 1
    if e:
        if a % 2 == 0:
            return 0
        if e % 2 and a % 8 in (3, 5):
            result = -result
    return result * _jacobi(a, n)
