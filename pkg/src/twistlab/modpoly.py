"""Dense univariate polynomial arithmetic over prime fields F_p.

Coefficient lists are ascending, reduced mod p, and trailing-zero free.
Only what the local reduction analysis and the factorisation machinery
need: gcd, modular exponentiation, root finding, and the root structure
of quadratics and cubics at arbitrary primes (including p = 2, 3).
"""

from __future__ import annotations

import random

_BRUTE_FORCE_BOUND = 1000


def trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def make(coeffs, p: int) -> list[int]:
    return trim([c % p for c in coeffs])


def degree(f: list[int]) -> int:
    return len(f) - 1


def add(f, g, p):
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % p
    return trim(out)


def sub(f, g, p):
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] - c) % p
    return trim(out)


def mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return trim(out)


def scalar_mul(f, c, p):
    c %= p
    return trim([a * c % p for a in f])


def divmod_fp(f, g, p):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = f[:]
    inv_lead = pow(g[-1], p - 2, p)
    dg = degree(g)
    q = [0] * max(len(f) - dg, 0)
    while degree(f) >= dg and f:
        k = degree(f) - dg
        c = f[-1] * inv_lead % p
        q[k] = c
        for i, b in enumerate(g):
            f[k + i] = (f[k + i] - c * b) % p
        trim(f)
    return trim(q), f


def monic(f, p):
    if not f:
        return f
    return scalar_mul(f, pow(f[-1], p - 2, p), p)


def gcd_fp(f, g, p):
    while g:
        f, g = g, divmod_fp(f, g, p)[1]
    return monic(f, p)


def derivative(f, p):
    return trim([i * c % p for i, c in enumerate(f)][1:])


def eval_fp(f, x, p):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def powmod_fp(base, e, mod, p):
    """base^e mod (mod) in F_p[x]."""
    result = [1]
    base = divmod_fp(base, mod, p)[1]
    while e:
        if e & 1:
            result = divmod_fp(mul(result, base, p), mod, p)[1]
        e >>= 1
        base = divmod_fp(mul(base, base, p), mod, p)[1]
    return result


def roots_fp(f: list[int], p: int) -> list[int]:
    """All roots of f in F_p, each listed once, sorted."""
    f = trim(f[:])
    if not f:
        raise ZeroDivisionError("zero polynomial has every root")
    if p < _BRUTE_FORCE_BOUND:
        return [x for x in range(p) if eval_fp(f, x, p) == 0]
    # linear-factor part: gcd(x^p - x, f)
    xp = powmod_fp([0, 1], p, f, p)
    lin = gcd_fp(sub(xp, [0, 1], p), f, p)
    return sorted(_split_linear_part(lin, p))


def _split_linear_part(h: list[int], p: int) -> list[int]:
    """Roots of a monic product of distinct linear factors over F_p."""
    deg = degree(h)
    if deg <= 0:
        return []
    if deg == 1:
        return [(-h[0]) * pow(h[1], p - 2, p) % p]
    rng = random.Random(0x7157AB)
    while True:
        a = rng.randrange(p)
        probe = powmod_fp([a, 1], (p - 1) // 2, h, p)
        g = gcd_fp(sub(probe, [1], p), h, p)
        if 0 < degree(g) < deg:
            rest = divmod_fp(h, g, p)[0]
            return _split_linear_part(g, p) + _split_linear_part(rest, p)


def count_roots_fp(f: list[int], p: int) -> int:
    if p < _BRUTE_FORCE_BOUND:
        return sum(1 for x in range(p) if eval_fp(f, x, p) == 0)
    xp = powmod_fp([0, 1], p, f, p)
    return degree(gcd_fp(sub(xp, [0, 1], p), f, p))


def root_multiplicity(f: list[int], x: int, p: int) -> int:
    m = 0
    cur = f[:]
    while cur and eval_fp(cur, x, p) == 0:
        cur = divmod_fp(cur, [(-x) % p, 1], p)[0]
        m += 1
    return m


def cubic_structure(coeffs, p: int):
    """Root structure over the algebraic closure of a cubic with unit lead.

    Returns one of:
      ("distinct", n_rational)    all three roots distinct
      ("double", theta, eta)      double root theta, simple root eta (F_p)
      ("triple", theta)           triple root theta (always in F_p)
    """
    f = make(coeffs, p)
    assert degree(f) == 3
    if p < _BRUTE_FORCE_BOUND:
        for x in range(p):
            m = root_multiplicity(f, x, p)
            if m == 2:
                rest = f[:]
                for _ in range(2):
                    rest = divmod_fp(rest, [(-x) % p, 1], p)[0]
                eta = (-rest[0]) * pow(rest[1], p - 2, p) % p
                return ("double", x, eta)
            if m == 3:
                return ("triple", x)
        return ("distinct", count_roots_fp(f, p))
    g = gcd_fp(f, derivative(f, p), p)
    if degree(g) == 0:
        return ("distinct", count_roots_fp(f, p))
    if degree(g) == 1:
        theta = (-g[0]) * pow(g[1], p - 2, p) % p
        rest = f[:]
        for _ in range(2):
            rest = divmod_fp(rest, [(-theta) % p, 1], p)[0]
        eta = (-rest[0]) * pow(rest[1], p - 2, p) % p
        return ("double", theta, eta)
    # p >= 5 here, so a triple root theta satisfies 3*theta = -f[2]/f[3]
    theta = (-f[2]) * pow(3 * f[3] % p, p - 2, p) % p
    return ("triple", theta)


def quadratic_structure(alpha: int, beta: int, gamma: int, p: int):
    """Root structure of alpha*X^2 + beta*X + gamma with alpha a unit mod p.

    Returns ("distinct", rational: bool) or ("double", root).
    """
    alpha %= p
    beta %= p
    gamma %= p
    assert alpha != 0
    if p == 2:
        if beta != 0:
            has_root = any(
                (alpha * x * x + beta * x + gamma) % 2 == 0 for x in (0, 1)
            )
            return ("distinct", has_root)
        return ("double", gamma * alpha % 2)  # sqrt is identity on F_2
    disc = (beta * beta - 4 * alpha * gamma) % p
    if disc == 0:
        inv = pow(2 * alpha % p, p - 2, p)
        return ("double", (-beta) * inv % p)
    return ("distinct", pow(disc, (p - 1) // 2, p) == 1)
