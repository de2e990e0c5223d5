"""Exact univariate polynomials over Q.

Dense rational coefficients with schoolbook arithmetic, primitive-PRS gcd
over Z, and extraction of all linear and quadratic factors via modular
factorization and Hensel lifting.  Degree 24 (the largest division
polynomial used anywhere) is comfortable territory for this machinery.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce

from . import modpoly

_FACTOR_PRIMES = (
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
    71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139,
)


@dataclass(frozen=True)
class Poly:
    """Polynomial over Q, dense ascending coefficients, no trailing zeros."""

    coeffs: tuple[Fraction, ...]

    @staticmethod
    def of(*coeffs) -> "Poly":
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return Poly(tuple(cs))

    @staticmethod
    def zero() -> "Poly":
        return Poly(())

    @staticmethod
    def const(c) -> "Poly":
        return Poly.of(c)

    @staticmethod
    def x() -> "Poly":
        return Poly.of(0, 1)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        return self.coeffs[-1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        out = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            out[i] += c
        for i, c in enumerate(other.coeffs):
            out[i] += c
        return Poly.of(*out)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly.of(*(c * other for c in self.coeffs))
        if self.is_zero() or other.is_zero():
            return Poly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly.of(*out)

    __rmul__ = __mul__

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dg = other.degree
        lead = other.leading()
        if len(rem) - 1 < dg:
            return Poly.zero(), self
        q = [Fraction(0)] * (len(rem) - dg)
        while len(rem) - 1 >= dg and rem:
            c = rem[-1] / lead
            k = len(rem) - 1 - dg
            q[k] = c
            for i, b in enumerate(other.coeffs):
                rem[k + i] -= c * b
            while rem and rem[-1] == 0:
                rem.pop()
        return Poly.of(*q), Poly.of(*rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def divides(self, other: "Poly") -> bool:
        return divmod(other, self)[1].is_zero()

    def derivative(self) -> "Poly":
        return Poly.of(*[i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = self.leading()
        return Poly(tuple(c / lead for c in self.coeffs))

    def integer_coeffs(self) -> list[int]:
        """Primitive integer version (denominators cleared, content removed)."""
        if self.is_zero():
            return []
        den = reduce(
            lambda a, b: a * b // math.gcd(a, b),
            (c.denominator for c in self.coeffs),
            1,
        )
        ints = [int(c * den) for c in self.coeffs]
        content = reduce(math.gcd, ints)
        if ints[-1] < 0:
            content = -content
        return [c // content for c in ints]

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*x^{i}" if i else f"{c}")
        return " + ".join(reversed(terms))


# --- integer polynomial helpers -------------------------------------------


def _int_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _int_content(f: list[int]) -> int:
    return reduce(math.gcd, f, 0)


def _int_primitive(f: list[int]) -> list[int]:
    c = _int_content(f)
    if c == 0:
        return []
    if f[-1] < 0:
        c = -c
    return [a // c for a in f]


def _int_mul(f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return out


def _int_pseudo_rem(f: list[int], g: list[int]) -> list[int]:
    """Pseudo-remainder of f by g (both integer, g nonzero)."""
    f = f[:]
    dg = len(g) - 1
    lead = g[-1]
    while len(f) - 1 >= dg and f:
        k = len(f) - 1 - dg
        c = f[-1]
        f = [a * lead for a in f]
        for i, b in enumerate(g):
            f[k + i] -= c * b
        _int_trim(f)
    return f


def int_gcd_poly(f: list[int], g: list[int]) -> list[int]:
    """Primitive gcd over Z via primitive pseudo-remainder sequence."""
    f, g = _int_primitive(f[:]), _int_primitive(g[:])
    if not f:
        return g
    if not g:
        return f
    if len(f) < len(g):
        f, g = g, f
    while g:
        r = _int_primitive(_int_pseudo_rem(f, g))
        f, g = g, r
    return _int_primitive(f)


def squarefree_int(f: list[int]) -> list[int]:
    """Squarefree part of a primitive integer polynomial (same root set)."""
    df = _int_trim([i * c for i, c in enumerate(f)][1:])
    g = int_gcd_poly(f, df)
    if len(g) == 1:
        return f[:]
    q, r = divmod(Poly.of(*f), Poly.of(*g))
    assert r.is_zero()
    return q.integer_coeffs()


# --- Hensel lifting --------------------------------------------------------


def _mod_poly(f: list[int], m: int) -> list[int]:
    return _int_trim([c % m for c in f])


def _poly_mul_mod(f, g, m):
    return _mod_poly(_int_mul(f, g), m)


def _poly_divmod_mod(f, g, m):
    """Division mod m; the divisor must be monic."""
    assert g and g[-1] % m == 1
    f = [c % m for c in f]
    dg = len(g) - 1
    if len(f) - 1 < dg:
        return [], _int_trim(f)
    q = [0] * (len(f) - dg)
    while len(f) - 1 >= dg and f:
        c = f[-1] % m
        k = len(f) - 1 - dg
        q[k] = c
        for i, b in enumerate(g):
            f[k + i] = (f[k + i] - c * b) % m
        _int_trim(f)
    return _int_trim(q), f


def _poly_add_mod(f, g, m):
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c % m
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % m
    return _int_trim(out)


def _poly_sub_mod(f, g, m):
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c % m
    for i, c in enumerate(g):
        out[i] = (out[i] - c) % m
    return _int_trim(out)


def _hensel_step(f, g, h, s, t, m):
    """One quadratic Hensel step: from mod m to mod m^2.

    Requires f = g*h (mod m), s*g + t*h = 1 (mod m), h monic.
    Returns (g', h', s', t') with the same relations mod m^2.
    """
    m2 = m * m
    e = _poly_sub_mod(f, _int_mul(g, h), m2)
    q, r = _poly_divmod_mod(_poly_mul_mod(s, e, m2), h, m2)
    g1 = _poly_add_mod(g, _poly_add_mod(_poly_mul_mod(t, e, m2), _poly_mul_mod(q, g, m2), m2), m2)
    h1 = _poly_add_mod(h, r, m2)
    b = _poly_sub_mod(_poly_add_mod(_poly_mul_mod(s, g1, m2), _poly_mul_mod(t, h1, m2), m2), [1], m2)
    c, d = _poly_divmod_mod(_poly_mul_mod(s, b, m2), h1, m2)
    s1 = _poly_sub_mod(s, d, m2)
    t1 = _poly_sub_mod(t, _poly_add_mod(_poly_mul_mod(t, b, m2), _poly_mul_mod(c, g1, m2), m2), m2)
    return g1, h1, s1, t1


def _bezout_fp(g, h, p):
    """s, t with s*g + t*h = 1 in F_p[x] for coprime g, h."""
    r0, r1 = [c % p for c in g], [c % p for c in h]
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while modpoly.degree(_int_trim(r1[:])) >= 0 and _int_trim(r1[:]):
        q, r = modpoly.divmod_fp(_int_trim(r0[:]), _int_trim(r1[:]), p)
        r0, r1 = r1, r
        s0, s1 = s1, modpoly.sub(s0, modpoly.mul(q, s1, p), p)
        t0, t1 = t1, modpoly.sub(t0, modpoly.mul(q, t1, p), p)
    lead = _int_trim(r0[:])[-1]
    inv = pow(lead, p - 2, p)
    assert modpoly.degree(_int_trim(r0[:])) == 0
    return modpoly.scalar_mul(s0, inv, p), modpoly.scalar_mul(t0, inv, p)


def _hensel_lift_pair(f, g, h, p, target):
    """Lift f = g*h from mod p to mod p^(2^k) >= target; h, g, f monic."""
    s, t = _bezout_fp(g, h, p)
    m = p
    while m < target:
        g, h, s, t = _hensel_step(f, g, h, s, t, m)
        m *= m
    return g, h, m


def _hensel_lift_factors(f, factors, p, target) -> list[list[int]]:
    """Lift a monic factorization f = prod(factors) mod p to mod >= target."""
    if len(factors) == 1:
        m = p
        while m < target:
            m *= m
        return [_mod_poly(f, m)]
    half = len(factors) // 2
    left, right = factors[:half], factors[half:]
    g0 = reduce(lambda a, b: modpoly.mul(a, b, p), left)
    h0 = reduce(lambda a, b: modpoly.mul(a, b, p), right)
    g, h, m = _hensel_lift_pair(f, g0, h0, p, target)
    return _hensel_lift_factors(g, left, p, target) + _hensel_lift_factors(
        h, right, p, target
    )


# --- modular factorization -------------------------------------------------


def _factor_fp(f: list[int], p: int) -> list[list[int]]:
    """Monic irreducible factors of a squarefree monic f over F_p."""
    rem = modpoly.monic(modpoly.make(f, p), p)
    stack: list[tuple[list[int], int]] = []
    xq = [0, 1]  # x^(p^d) mod rem, starting at d = 0
    d = 0
    while modpoly.degree(rem) > 0:
        d += 1
        if 2 * d > modpoly.degree(rem):
            stack.append((rem, modpoly.degree(rem)))
            break
        xq = modpoly.powmod_fp(xq, p, rem, p)
        g = modpoly.gcd_fp(modpoly.sub(xq, [0, 1], p), rem, p)
        if modpoly.degree(g) > 0:
            stack.append((g, d))
            rem = modpoly.divmod_fp(rem, g, p)[0]
            if modpoly.degree(rem) > 0:
                xq = modpoly.divmod_fp(xq, rem, p)[1]
    # equal-degree split (Cantor-Zassenhaus)
    rng = random.Random(0xD1F0)
    factors: list[list[int]] = []
    for prod, deg in stack:
        factors.extend(_edf(prod, deg, p, rng))
    return factors


def _edf(h: list[int], d: int, p: int, rng: random.Random) -> list[list[int]]:
    deg = modpoly.degree(h)
    if deg == d:
        return [h]
    exponent = (p**d - 1) // 2
    while True:
        a = [rng.randrange(p) for _ in range(deg)] + [1]
        probe = modpoly.powmod_fp(modpoly.make(a, p), exponent, h, p)
        g = modpoly.gcd_fp(modpoly.sub(probe, [1], p), h, p)
        if 0 < modpoly.degree(g) < deg:
            rest = modpoly.divmod_fp(h, g, p)[0]
            return _edf(g, d, p, rng) + _edf(rest, d, p, rng)


def _choose_prime(f: list[int]) -> int:
    df = _int_trim([i * c for i, c in enumerate(f)][1:])
    for p in _FACTOR_PRIMES:
        if f[-1] % p == 0:
            continue
        if modpoly.degree(modpoly.gcd_fp(modpoly.make(f, p), modpoly.make(df, p), p)) == 0:
            return p
    raise RuntimeError("no factorization prime found (discriminant too smooth)")


def _centered(c: int, m: int) -> int:
    c %= m
    return c - m if c > m // 2 else c


def _int_div_exact(f: list[int], g: list[int]) -> list[int] | None:
    """f // g over Z when the division is exact and g is monic, else None."""
    f = f[:]
    dg = len(g) - 1
    if len(f) - 1 < dg:
        return None
    q = [0] * (len(f) - dg)
    while len(f) - 1 >= dg and f:
        c = f[-1]
        k = len(f) - 1 - dg
        q[k] = c
        for i, b in enumerate(g):
            f[k + i] -= c * b
        _int_trim(f)
    return None if f else q


def _small_factors_of_monic(G: list[int]) -> tuple[list[int], list[tuple[int, int]]]:
    """All integer roots and monic irreducible quadratic factors of monic G.

    G must be squarefree.  Returns (roots, [(u, v) for x^2+ux+v]).
    """
    n = len(G) - 1
    if n <= 0:
        return [], []
    if n == 1:
        return [-G[0]], []
    height = max(abs(c) for c in G)
    root_bound = 1 + height
    coeff_bound = max(2 * root_bound, root_bound * root_bound)
    p = _choose_prime(G)
    modular = _factor_fp(G, p)
    lifted = _hensel_lift_factors(G, modular, p, 2 * coeff_bound + 1)
    m = p
    while m < 2 * coeff_bound + 1:
        m *= m
    roots: list[int] = []
    linears: list[list[int]] = []
    quads: list[tuple[int, int]] = []
    for fac in lifted:
        if len(fac) == 2:
            linears.append(fac)
            r = _centered(-fac[0], m)
            if abs(r) <= root_bound and Poly.of(*G)(r) == 0:
                roots.append(r)
        elif len(fac) == 3:
            u, v = _centered(fac[1], m), _centered(fac[0], m)
            if abs(u) <= coeff_bound and abs(v) <= coeff_bound:
                if _int_div_exact(G, [v, u, 1]) is not None:
                    quads.append((u, v))
    for i in range(len(linears)):
        for j in range(i + 1, len(linears)):
            prod = [c % m for c in _int_mul(linears[i], linears[j])]
            u, v = _centered(prod[1], m), _centered(prod[0], m)
            if abs(u) <= coeff_bound and abs(v) <= coeff_bound:
                if _int_div_exact(G, [v, u, 1]) is not None:
                    quads.append((u, v))
    return sorted(set(roots)), sorted(set(quads))


def _normalized_monic_int(f: Poly) -> tuple[list[int], int, int]:
    """(monic integer G, lc, zero_root_multiplicity) describing f's roots.

    G(u) = lc^(deg-1) * F(u/lc) for the squarefree primitive part F of f
    with any power of x stripped; roots of f are zero (if stripped) plus
    roots-of-G divided by lc.
    """
    ints = f.integer_coeffs()
    zero_mult = 0
    while ints and ints[0] == 0:
        ints.pop(0)
        zero_mult += 1
    if len(ints) <= 1:
        return [], 1, zero_mult
    F = squarefree_int(_int_primitive(ints))
    lc = F[-1]
    n = len(F) - 1
    G = [F[i] * lc ** (n - 1 - i) for i in range(n)] + [1]
    return G, lc, zero_mult


@lru_cache(maxsize=4096)
def rational_roots(f: Poly) -> tuple[Fraction, ...]:
    """All rational roots of f (each once, sorted)."""
    if f.is_zero():
        raise ZeroDivisionError("zero polynomial")
    G, lc, zero_mult = _normalized_monic_int(f)
    roots = [Fraction(0)] if zero_mult else []
    if G:
        int_roots, _ = _small_factors_of_monic(G)
        roots.extend(Fraction(r, lc) for r in int_roots)
    return tuple(sorted(set(roots)))


@lru_cache(maxsize=4096)
def monic_quadratic_factors(f: Poly) -> tuple[tuple[Fraction, Fraction], ...]:
    """Irreducible monic quadratic factors x^2 + u*x + v of f over Q.

    Only factors whose discriminant is not a rational square are returned;
    reducible quadratics already show up through rational_roots.
    """
    if f.is_zero():
        raise ZeroDivisionError("zero polynomial")
    G, lc, _ = _normalized_monic_int(f)
    if not G:
        return ()
    _, quads = _small_factors_of_monic(G)
    out = []
    for u, v in quads:
        uu, vv = Fraction(u, lc), Fraction(v, lc * lc)
        disc = uu * uu - 4 * vv
        num, den = disc.numerator, disc.denominator
        rn, rd = math.isqrt(abs(num)), math.isqrt(den)
        if num >= 0 and rn * rn == num and rd * rd == den:
            continue
        out.append((uu, vv))
    return tuple(sorted(set(out)))
