"""Tate's algorithm at each prime of bad reduction.

Computes the Kodaira type, conductor exponent f_p, Tamagawa number c_p,
and reduction class for any prime, including the wild primes 2 and 3
(the full step-by-step algorithm, no shortcut formulas).  The same loop
detects non-minimality, which is what minimal_model builds on.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from . import modpoly
from .arith import _factorize_core, factorize, is_prime, squarefree_part
from .curve import (
    ModelTransformation,
    WeierstrassCurve,
    _integralizing_transform,
    minimal_model,
    quadratic_twist,
)
from .errors import NotPrime, SingularCurve

log = logging.getLogger(__name__)


class ReductionClass(Enum):
    GOOD = "good"
    MULTIPLICATIVE_SPLIT = "multiplicative split"
    MULTIPLICATIVE_NONSPLIT = "multiplicative nonsplit"
    ADDITIVE = "additive"


@dataclass(frozen=True)
class KodairaType:
    """Kodaira symbol; n is used for the I_n and I_n* series only."""

    tag: str
    n: int | None = None

    def __post_init__(self):
        if self.tag in ("I", "I*"):
            assert self.n is not None and self.n >= 0
        else:
            assert self.tag in ("II", "III", "IV", "IV*", "III*", "II*")
            assert self.n is None

    @property
    def label(self) -> str:
        if self.tag == "I":
            return f"I{self.n}"
        if self.tag == "I*":
            return f"I{self.n}*"
        return self.tag

    def is_good(self) -> bool:
        return self.tag == "I" and self.n == 0

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class ReductionData:
    """Per-prime output of Tate's algorithm on the local minimal model."""

    p: int
    kodaira: KodairaType
    f_p: int
    c_p: int
    reduction_class: ReductionClass

    def __post_init__(self):
        good = self.kodaira.is_good()
        mult = self.kodaira.tag == "I" and self.kodaira.n >= 1
        assert good == (self.f_p == 0) == (self.reduction_class is ReductionClass.GOOD)
        assert mult == (self.f_p == 1)
        assert (self.f_p >= 2) == (self.reduction_class is ReductionClass.ADDITIVE)
        assert self.c_p >= 1


def _vp(m: int, p: int) -> int:
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


def _vp_at_least(m: int, p: int, k: int) -> bool:
    return m == 0 or m % p**k == 0


def _has_fp_root(a: int, b: int, c: int, p: int) -> bool:
    """Does a*T^2 + b*T + c have a root in F_p (a a unit mod p)?"""
    if p == 2:
        return any((a * t * t + b * t + c) % 2 == 0 for t in (0, 1))
    disc = (b * b - 4 * a * c) % p
    return disc == 0 or pow(disc, (p - 1) // 2, p) == 1


def _singular_point(E: WeierstrassCurve, p: int) -> tuple[int, int]:
    """The unique singular point of the reduction mod p, p | disc."""
    a1, a2, a3, a4, a6 = (int(a) for a in E.ainvs)
    if p <= 3:
        for x in range(p):
            for y in range(p):
                if (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % p:
                    continue
                if (a1 * y - 3 * x * x - 2 * a2 * x - a4) % p:
                    continue
                if (2 * y + a1 * x + a3) % p:
                    continue
                return x, y
        raise AssertionError(f"no singular point mod {p} on {E}")
    b2, b4, b6 = int(E.b2), int(E.b4), int(E.b6)
    cubic = modpoly.make([b6, 2 * b4, b2, 4], p)
    deriv = modpoly.derivative(cubic, p)
    g = modpoly.gcd_fp(cubic, deriv, p)
    if modpoly.degree(g) == 1:
        x0 = (-g[0]) * pow(g[1], p - 2, p) % p
    elif modpoly.degree(g) == 2:
        x0 = (-g[1]) * pow(2 * g[2] % p, p - 2, p) % p
    else:
        raise AssertionError(f"reduction of {E} mod {p} is not singular")
    y0 = (-(a1 * x0 + a3)) * pow(2, p - 2, p) % p
    return x0, y0


def _shift(
    cur: WeierstrassCurve, T: ModelTransformation, r: int = 0, s: int = 0, t: int = 0
) -> tuple[WeierstrassCurve, ModelTransformation]:
    step = ModelTransformation.of(1, r, s, t)
    return step.apply(cur), T.then(step)


def _normalize_step6(cur, T, p):
    """Arrange p | a1, a2; p^2 | a3, a4; p^3 | a6 by s- and t-shifts."""
    a1, a2, a3, a4, a6 = (int(a) for a in cur.ainvs)
    if p == 2:
        if a2 % 2:
            cur, T = _shift(cur, T, s=1)
            a6 = int(cur.a6)
        t = 2 * ((a6 // 4) % 2)
        if t:
            cur, T = _shift(cur, T, t=t)
    else:
        s = (-a1) * pow(2, p - 2, p) % p
        if s:
            cur, T = _shift(cur, T, s=s)
        a3 = int(cur.a3)
        t = (-a3) * pow(2, -1, p * p) % (p * p)
        if t:
            cur, T = _shift(cur, T, t=t)
    a1, a2, a3, a4, a6 = (int(a) for a in cur.ainvs)
    assert a1 % p == 0 and a2 % p == 0
    assert _vp_at_least(a3, p, 2) and _vp_at_least(a4, p, 2) and _vp_at_least(a6, p, 3)
    return cur, T


def _instar_ladder(cur, T, p, n_disc):
    """Step-7 subprocedure: determine n and c_p for type I_n*."""
    k = 2
    while True:
        a2, a3, a4, a6 = (int(a) for a in cur.ainvs[1:])
        # odd candidate n = 2k-3: Y^2 + (a3/p^k) Y - a6/p^(2k)
        st = modpoly.quadratic_structure(1, a3 // p**k, -(a6 // p ** (2 * k)), p)
        if st[0] == "distinct":
            n = 2 * k - 3
            return n, (4 if st[1] else 2), cur, T
        cur, T = _shift(cur, T, t=p**k * st[1])
        a2, a3, a4, a6 = (int(a) for a in cur.ainvs[1:])
        assert _vp_at_least(a3, p, k + 1) and _vp_at_least(a6, p, 2 * k + 1)
        # even candidate n = 2k-2: (a2/p) X^2 + (a4/p^(k+1)) X + a6/p^(2k+1)
        st = modpoly.quadratic_structure(a2 // p, a4 // p ** (k + 1), a6 // p ** (2 * k + 1), p)
        if st[0] == "distinct":
            n = 2 * k - 2
            return n, (4 if st[1] else 2), cur, T
        cur, T = _shift(cur, T, r=p**k * st[1])
        a2, a3, a4, a6 = (int(a) for a in cur.ainvs[1:])
        assert _vp_at_least(a4, p, k + 2) and _vp_at_least(a6, p, 2 * k + 2)
        k += 1
        assert k <= n_disc + 2, "I_n* ladder failed to terminate"


def _tate_local(E: WeierstrassCurve, p: int):
    """Tate's algorithm on an integral model.

    Returns (ReductionData, final model, transformation onto it, rescaled)
    where `rescaled` says whether a u = p reduction was applied, i.e. the
    input was non-minimal at p.
    """
    T = ModelTransformation.identity()
    cur = E
    rescaled = False
    while True:
        n = _vp(int(cur.disc), p)
        if n == 0:
            rd = ReductionData(p, KodairaType("I", 0), 0, 1, ReductionClass.GOOD)
            return rd, cur, T, rescaled
        r0, t0 = _singular_point(cur, p)
        if r0 or t0:
            cur, T = _shift(cur, T, r=r0, t=t0)
        a1, a2, a3, a4, a6 = (int(a) for a in cur.ainvs)
        assert a3 % p == 0 and a4 % p == 0 and a6 % p == 0
        if int(cur.b2) % p:
            # multiplicative: tangents split iff T^2 + a1*T - a2 has roots
            if _has_fp_root(1, a1, -a2, p):
                rd = ReductionData(
                    p, KodairaType("I", n), 1, n, ReductionClass.MULTIPLICATIVE_SPLIT
                )
            else:
                rd = ReductionData(
                    p,
                    KodairaType("I", n),
                    1,
                    2 if n % 2 == 0 else 1,
                    ReductionClass.MULTIPLICATIVE_NONSPLIT,
                )
            return rd, cur, T, rescaled
        additive = ReductionClass.ADDITIVE
        if not _vp_at_least(a6, p, 2):
            rd = ReductionData(p, KodairaType("II"), n, 1, additive)
            return rd, cur, T, rescaled
        if not _vp_at_least(int(cur.b8), p, 3):
            rd = ReductionData(p, KodairaType("III"), n - 1, 2, additive)
            return rd, cur, T, rescaled
        if not _vp_at_least(int(cur.b6), p, 3):
            c = 3 if _has_fp_root(1, a3 // p, -(a6 // p**2), p) else 1
            rd = ReductionData(p, KodairaType("IV"), n - 2, c, additive)
            return rd, cur, T, rescaled
        cur, T = _normalize_step6(cur, T, p)
        a1, a2, a3, a4, a6 = (int(a) for a in cur.ainvs)
        structure = modpoly.cubic_structure(
            [a6 // p**3, a4 // p**2, a2 // p, 1], p
        )
        if structure[0] == "distinct":
            rd = ReductionData(
                p, KodairaType("I*", 0), n - 4, 1 + structure[1], additive
            )
            return rd, cur, T, rescaled
        if structure[0] == "double":
            cur, T = _shift(cur, T, r=p * structure[1])
            a2, a4, a6 = int(cur.a2), int(cur.a4), int(cur.a6)
            assert _vp(a2, p) == 1
            assert _vp_at_least(a4, p, 3) and _vp_at_least(a6, p, 4)
            m, c, cur, T = _instar_ladder(cur, T, p, n)
            rd = ReductionData(p, KodairaType("I*", m), n - 4 - m, c, additive)
            return rd, cur, T, rescaled
        # triple root
        cur, T = _shift(cur, T, r=p * structure[1])
        a1, a2, a3, a4, a6 = (int(a) for a in cur.ainvs)
        assert _vp_at_least(a2, p, 2) and _vp_at_least(a4, p, 3) and _vp_at_least(a6, p, 4)
        st = modpoly.quadratic_structure(1, a3 // p**2, -(a6 // p**4), p)
        if st[0] == "distinct":
            rd = ReductionData(
                p, KodairaType("IV*"), n - 6, 3 if st[1] else 1, additive
            )
            return rd, cur, T, rescaled
        cur, T = _shift(cur, T, t=p * p * st[1])
        a3, a4, a6 = int(cur.a3), int(cur.a4), int(cur.a6)
        assert _vp_at_least(a3, p, 3) and _vp_at_least(a6, p, 5)
        if not _vp_at_least(a4, p, 4):
            rd = ReductionData(p, KodairaType("III*"), n - 7, 2, additive)
            return rd, cur, T, rescaled
        if not _vp_at_least(a6, p, 6):
            rd = ReductionData(p, KodairaType("II*"), n - 8, 1, additive)
            return rd, cur, T, rescaled
        # non-minimal at p: rescale by u = p and start over
        rescale = ModelTransformation.of(p)
        cur = rescale.apply(cur)
        assert cur.is_integral()
        T = T.then(rescale)
        rescaled = True


@lru_cache(maxsize=None)
def tate_algorithm(E: WeierstrassCurve, p: int) -> ReductionData:
    """Kodaira type, conductor exponent and Tamagawa number of E at p.

    The model is re-minimalized at p if necessary, so the answer always
    refers to the local minimal model.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if E.disc == 0:
        raise SingularCurve(f"discriminant of {E} vanishes")
    scale = _integralizing_transform(E)
    rd = _tate_local(scale.apply(E) if not scale.is_identity() else E, p)[0]
    if p >= 5:
        assert rd.f_p <= 2
    return rd


@lru_cache(maxsize=None)
def reduction_summary(E: WeierstrassCurve) -> tuple[ReductionData, ...]:
    """Reduction data of the minimal model at every bad prime, ascending."""
    Em, _ = minimal_model(E)
    data = []
    for p in _factorize_core(int(Em.disc)).primes():
        rd = tate_algorithm(Em, p)
        assert rd.f_p >= 1, f"minimal model {Em} claims good reduction at {p}"
        data.append(rd)
    return tuple(data)


def bad_primes(E: WeierstrassCurve) -> frozenset[int]:
    """Primes dividing the minimal discriminant."""
    return frozenset(rd.p for rd in reduction_summary(E))


def conductor(E: WeierstrassCurve) -> int:
    """N = prod p^(f_p) over the bad primes of the minimal model."""
    N = 1
    for rd in reduction_summary(E):
        N *= rd.p**rd.f_p
    return N


def tamagawa_product(E: WeierstrassCurve) -> int:
    """c(E/Q) = prod of the Tamagawa numbers over the bad primes."""
    c = 1
    for rd in reduction_summary(E):
        c *= rd.c_p
    return c


def twist_reduction_at_twisting_primes(
    E: WeierstrassCurve, d: int
) -> dict[int, ReductionData]:
    """Reduction of the minimal twist E^d at primes p | d with p > 3, p good for E.

    Such primes force type I0*; any other type is logged and flagged for
    review rather than raised, since only the I0* case is relied upon.
    """
    d0 = squarefree_part(d).squarefree
    N = conductor(E)
    out: dict[int, ReductionData] = {}
    if d0 in (1, -1):
        return out
    twist_min = minimal_model(quadratic_twist(E, d0))[0]
    for p in factorize(d0).primes():
        if p <= 3 or N % p == 0:
            continue
        rd = tate_algorithm(twist_min, p)
        out[p] = rd
        if rd.kodaira.label != "I0*":
            log.warning(
                "twist of %s by %d has type %s at %d (expected I0*); flagged for review",
                E,
                d0,
                rd.kodaira.label,
                p,
            )
    return out
