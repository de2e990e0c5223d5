"""Weierstrass models over Q.

Invariants, change of variables, isomorphism testing, globally minimal
models, and the quadratic twist construction.  Coefficients are exact
rationals throughout; a curve object is immutable and hashable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional

from .arith import _factorize_core, squarefree_part, valuation
from .errors import CurveParseError, SingularCurve, ZeroInput


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6."""

    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction

    @staticmethod
    def of(a1, a2, a3, a4, a6) -> "WeierstrassCurve":
        return WeierstrassCurve(
            Fraction(a1), Fraction(a2), Fraction(a3), Fraction(a4), Fraction(a6)
        )

    @property
    def ainvs(self) -> tuple[Fraction, Fraction, Fraction, Fraction, Fraction]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @cached_property
    def b2(self) -> Fraction:
        return self.a1 * self.a1 + 4 * self.a2

    @cached_property
    def b4(self) -> Fraction:
        return 2 * self.a4 + self.a1 * self.a3

    @cached_property
    def b6(self) -> Fraction:
        return self.a3 * self.a3 + 4 * self.a6

    @cached_property
    def b8(self) -> Fraction:
        return (
            self.a1 * self.a1 * self.a6
            + 4 * self.a2 * self.a6
            - self.a1 * self.a3 * self.a4
            + self.a2 * self.a3 * self.a3
            - self.a4 * self.a4
        )

    @cached_property
    def c4(self) -> Fraction:
        return self.b2 * self.b2 - 24 * self.b4

    @cached_property
    def c6(self) -> Fraction:
        return -self.b2**3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @cached_property
    def disc(self) -> Fraction:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def is_singular(self) -> bool:
        return self.disc == 0

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.ainvs)

    def rhs(self, x):
        """x^3 + a2*x^2 + a4*x + a6 (accepts rational or field elements)."""
        return ((x + self.a2) * x + self.a4) * x + self.a6

    def contains(self, x, y) -> bool:
        return y * y + self.a1 * x * y + self.a3 * y == self.rhs(x)

    def literal(self) -> str:
        def fmt(a: Fraction) -> str:
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

        return "[" + ",".join(fmt(a) for a in self.ainvs) + "]"

    def __str__(self) -> str:
        return self.literal()


@dataclass(frozen=True)
class CurveInvariants:
    b2: Fraction
    b4: Fraction
    b6: Fraction
    b8: Fraction
    c4: Fraction
    c6: Fraction
    disc: Fraction
    j: Fraction


def invariants(E: WeierstrassCurve) -> CurveInvariants:
    """Standard b/c/Delta/j invariants; raises on a singular equation."""
    if E.disc == 0:
        raise SingularCurve(f"discriminant of {E} vanishes")
    return CurveInvariants(
        E.b2, E.b4, E.b6, E.b8, E.c4, E.c6, E.disc, E.c4**3 / E.disc
    )


@dataclass(frozen=True)
class ModelTransformation:
    """Change of variables x = u^2 x' + r, y = u^3 y' + s u^2 x' + t."""

    u: Fraction
    r: Fraction
    s: Fraction
    t: Fraction

    def __post_init__(self):
        if self.u == 0:
            raise ZeroInput("u must be nonzero")

    @staticmethod
    def identity() -> "ModelTransformation":
        return ModelTransformation(Fraction(1), Fraction(0), Fraction(0), Fraction(0))

    @staticmethod
    def of(u, r=0, s=0, t=0) -> "ModelTransformation":
        return ModelTransformation(Fraction(u), Fraction(r), Fraction(s), Fraction(t))

    def is_identity(self) -> bool:
        return self.u == 1 and self.r == 0 and self.s == 0 and self.t == 0

    def apply(self, E: WeierstrassCurve) -> WeierstrassCurve:
        u, r, s, t = self.u, self.r, self.s, self.t
        a1, a2, a3, a4, a6 = E.ainvs
        return WeierstrassCurve(
            (a1 + 2 * s) / u,
            (a2 - s * a1 + 3 * r - s * s) / u**2,
            (a3 + r * a1 + 2 * t) / u**3,
            (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u**4,
            (a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1) / u**6,
        )

    def then(self, other: "ModelTransformation") -> "ModelTransformation":
        """Composite transformation: apply self first, then other."""
        u1, r1, s1, t1 = self.u, self.r, self.s, self.t
        u2, r2, s2, t2 = other.u, other.r, other.s, other.t
        return ModelTransformation(
            u1 * u2,
            r1 + u1 * u1 * r2,
            s1 + u1 * s2,
            t1 + u1 * u1 * s1 * r2 + u1**3 * t2,
        )

    def inverse(self) -> "ModelTransformation":
        u, r, s, t = self.u, self.r, self.s, self.t
        return ModelTransformation(
            1 / u, -r / u**2, -s / u, (s * r - t) / u**3
        )

    def apply_to_point(self, point):
        """Map an (x, y) point of the source model to the target model."""
        if point is None:
            return None
        x, y = point
        u, r, s, t = self.u, self.r, self.s, self.t
        return ((x - r) / u**2, (y - s * (x - r) - t) / u**3)


def parse_curve(text: str) -> WeierstrassCurve:
    """Parse a `[a1,a2,a3,a4,a6]` literal with integer or p/q entries."""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise CurveParseError(f"expected [a1,a2,a3,a4,a6], got {text!r}")
    parts = body[1:-1].split(",")
    if len(parts) != 5:
        raise CurveParseError(f"expected 5 coefficients, got {len(parts)}")
    try:
        coeffs = [Fraction(p.strip()) for p in parts]
    except (ValueError, ZeroDivisionError) as exc:
        raise CurveParseError(f"bad coefficient in {text!r}: {exc}") from exc
    return WeierstrassCurve(*coeffs)


def _int_nth_root(m: int, n: int) -> int | None:
    """Exact n-th root of a nonnegative integer, or None."""
    if m < 0:
        return None
    if m in (0, 1):
        return m
    r = int(round(m ** (1.0 / n)))
    for cand in range(max(1, r - 2), r + 3):
        if cand**n == m:
            return cand
    # float seed can be off for very large m; fall back to bisection
    lo, hi = 1, 1 << (m.bit_length() // n + 1)
    while lo <= hi:
        mid = (lo + hi) // 2
        v = mid**n
        if v == m:
            return mid
        if v < m:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def _rational_nth_root(q: Fraction, n: int) -> Fraction | None:
    if q <= 0:
        return None
    rn = _int_nth_root(q.numerator, n)
    rd = _int_nth_root(q.denominator, n)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)


def short_model(E: WeierstrassCurve) -> tuple[WeierstrassCurve, ModelTransformation]:
    """The model [0,0,0,-27*c4,-54*c6] together with the map onto it."""
    inv = invariants(E)
    t1 = ModelTransformation.of(1, 0, -E.a1 / 2, -E.a3 / 2)
    t2 = ModelTransformation.of(1, -E.b2 / 12, 0, 0)
    t3 = ModelTransformation.of(Fraction(1, 6), 0, 0, 0)
    T = t1.then(t2).then(t3)
    S = T.apply(E)
    assert S.ainvs == (0, 0, 0, -27 * inv.c4, -54 * inv.c6)
    return S, T


def quadratic_twist(E: WeierstrassCurve, d: int) -> WeierstrassCurve:
    """Quadratic twist by the squarefree part of d, on the short model.

    The result is [0,0,0, A*d^2, B*d^3] for the short model Y^2 = X^3+AX+B
    of E; it is not minimal.  Twisting by 1 returns a curve isomorphic to E.
    """
    if d == 0:
        raise ZeroInput("twist parameter must be nonzero")
    inv = invariants(E)
    d0 = squarefree_part(d).squarefree
    A = -27 * inv.c4
    B = -54 * inv.c6
    return WeierstrassCurve.of(0, 0, 0, A * d0 * d0, B * d0**3)


def is_isomorphic_over_Q(
    E1: WeierstrassCurve, E2: WeierstrassCurve
) -> Optional[ModelTransformation]:
    """A transformation carrying E1 to E2 over Q, or None.

    The scale |u| is pinned by u^12 = disc(E1)/disc(E2), and composing with
    negation flips the sign of u, so only the positive root needs checking.
    """
    inv1, inv2 = invariants(E1), invariants(E2)
    if inv1.j != inv2.j:
        return None
    u = _rational_nth_root(inv1.disc / inv2.disc, 12)
    if u is None:
        return None
    s = (u * E2.a1 - E1.a1) / 2
    r = (u * u * E2.a2 - E1.a2 + s * E1.a1 + s * s) / 3
    t = (u**3 * E2.a3 - E1.a3 - r * E1.a1) / 2
    T = ModelTransformation(u, r, s, t)
    return T if T.apply(E1) == E2 else None


def _integralizing_transform(E: WeierstrassCurve) -> ModelTransformation:
    den = 1
    for a in E.ainvs:
        den = den * a.denominator // math.gcd(den, a.denominator)
    if den == 1:
        return ModelTransformation.identity()
    scale = 1
    for p, _ in _factorize_core(den).factors:
        e = max(
            -(valuation(a, p) // i) if a != 0 else 0
            for a, i in zip(E.ainvs, (1, 2, 3, 4, 6))
        )
        scale *= p ** max(e, 0)
    return ModelTransformation.of(Fraction(1, scale))


def minimal_model(
    E: WeierstrassCurve,
) -> tuple[WeierstrassCurve, ModelTransformation]:
    """Globally minimal reduced model and the transformation onto it.

    Local minimality is decided by the same machinery that computes
    reduction types; the result is then normalized to a1, a3 in {0, 1}
    and a2 in {-1, 0, 1}, which makes the output unique.
    """
    from . import localdata  # deferred: localdata depends on this module

    if E.disc == 0:
        raise SingularCurve(f"discriminant of {E} vanishes")
    T = _integralizing_transform(E)
    cur = T.apply(E) if not T.is_identity() else E
    for p in _factorize_core(int(cur.disc)).primes():
        if valuation(cur.disc, p) < 12:
            continue
        if cur.c4 != 0 and valuation(cur.c4, p) < 4:
            continue
        if cur.c6 != 0 and valuation(cur.c6, p) < 6:
            continue
        _, model, trans, rescaled = localdata._tate_local(cur, p)
        if rescaled:
            cur, T = model, T.then(trans)
    # canonical reduction: a1, a3 in {0,1}; a2 in {-1,0,1}
    s = (cur.a1 % 2 - cur.a1) / 2
    stage = ModelTransformation.of(1, 0, s, 0)
    cur, T = stage.apply(cur), T.then(stage)
    a2_target = cur.a2 % 3 if cur.a2 % 3 <= 1 else cur.a2 % 3 - 3
    r = (a2_target - cur.a2) / 3
    stage = ModelTransformation.of(1, r, 0, 0)
    cur, T = stage.apply(cur), T.then(stage)
    t = (cur.a3 % 2 - cur.a3) / 2
    stage = ModelTransformation.of(1, 0, 0, t)
    cur, T = stage.apply(cur), T.then(stage)
    assert cur.is_integral()
    return cur, T
