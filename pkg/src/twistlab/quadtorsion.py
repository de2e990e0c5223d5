"""Torsion of E over L = Q(sqrt(d)).

The odd part comes from the decomposition odd(E(Q)) + odd(E^d(Q)); the
2-torsion E(L)[2] is read off the 2-division cubic; and an independent
oracle recomputes E(L)[l] for l in {3, 5, 7} directly from division
polynomial factorizations over Q(sqrt(d)).  Full 2-primary torsion over
L beyond E(L)[2] is deliberately not computed; reports say exactly that.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .arith import factorize, squarefree_part, valuation
from .curve import WeierstrassCurve, minimal_model, quadratic_twist
from .errors import TrivialExtension, ZeroInput
from .groups import AbelianGroup
from .polys import Poly, monic_quadratic_factors, rational_roots
from .quadfield import (
    QuadElement,
    _rational_sqrt,
    element,
    is_square_in_field,
    make_field,
)
from .torsion import (
    TorsionGroup,
    _division_f,
    _two_division_poly,
    torsion_subgroup,
)


def _normalize_d(d: int) -> int:
    if d == 0:
        raise ZeroInput("d must be nonzero")
    d0 = squarefree_part(d).squarefree
    if d0 == 1:
        raise TrivialExtension("Q(sqrt(d)) = Q")
    return d0


def _rational_square_class(q) -> int:
    """Squarefree integer representing q modulo rational squares."""
    if q == 0:
        return 0
    return squarefree_part(q.numerator * q.denominator).squarefree


@lru_cache(maxsize=None)
def twist_minimal(E: WeierstrassCurve, d0: int) -> WeierstrassCurve:
    return minimal_model(quadratic_twist(E, d0))[0]


def odd_torsion_over_L(E: WeierstrassCurve, d: int) -> AbelianGroup:
    """Odd part of E(L)_tors as odd(E(Q)_tors) + odd(E^d(Q)_tors)."""
    d0 = _normalize_d(d)
    base = torsion_subgroup(E).group().odd_part()
    tw = torsion_subgroup(twist_minimal(E, d0)).group().odd_part()
    return base.direct_sum(tw)


_RANK_FROM_ROOTS = {0: 0, 1: 1, 3: 2}


def two_torsion_rank_over_Q(E: WeierstrassCurve) -> int:
    """Rank of E(Q)[2] as an elementary abelian 2-group (0, 1 or 2)."""
    return _RANK_FROM_ROOTS[len(rational_roots(_two_division_poly(E)))]


def two_torsion_over_L(E: WeierstrassCurve, d: int) -> AbelianGroup:
    """E(L)[2] from the roots of the 2-division cubic in Q and Q(sqrt(d))."""
    d0 = _normalize_d(d)
    cubic = _two_division_poly(E)
    roots = rational_roots(cubic)
    in_L = len(roots)
    if len(roots) == 1:
        # the cofactor quadratic has roots in L iff its discriminant is
        # d times a rational square
        quotient, rem = divmod(cubic, Poly.of(-roots[0], 1))
        assert rem.is_zero()
        c, b, a = quotient.coeffs
        if _rational_square_class(b * b - 4 * a * c) == d0:
            in_L += 2
    elif len(roots) == 0:
        for u, v in monic_quadratic_factors(cubic):
            if _rational_square_class(u * u - 4 * v) == d0:
                in_L += 2
    rank = _RANK_FROM_ROOTS[in_L]
    return AbelianGroup(tuple([2] * rank))


def _ell_points_at_x(E: WeierstrassCurve, x, field) -> int:
    """Number of points of E over L above the given x in L (0 or 2)."""
    if not isinstance(x, QuadElement):
        x = element(field, x)
    a = E.a1 * x + element(field, E.a3)
    delta = a * a + 4 * E.rhs(x)
    root = is_square_in_field(delta)
    if root is None:
        return 0
    assert not root.is_zero(), "odd-order x cannot carry a 2-torsion point"
    return 2


def direct_ell_torsion_over_L(E: WeierstrassCurve, d: int, ell: int) -> AbelianGroup:
    """E(L)[ell] for ell in {3, 5, 7}, computed without the twist shortcut.

    Factors the ell-division polynomial over Q, keeps rational roots and
    the roots of quadratic factors that lie in Q(sqrt(d)), and lifts y
    through exact field arithmetic.
    """
    if ell not in (3, 5, 7):
        raise ValueError("the direct oracle covers ell in {3, 5, 7}")
    d0 = _normalize_d(d)
    field = make_field(d0)
    Em, _ = minimal_model(E)
    f = _division_f(Em, ell)
    count = 0
    for x0 in rational_roots(f):
        count += _ell_points_at_x(Em, x0, field)
    for u, v in monic_quadratic_factors(f):
        disc = u * u - 4 * v
        if _rational_square_class(disc) != d0:
            continue
        rw = _rational_sqrt(disc / d0)
        assert rw is not None
        for sign in (1, -1):
            x0 = QuadElement(-u / 2, sign * rw / 2, field)
            assert (x0 * x0 + u * x0 + v).is_zero()
            count += _ell_points_at_x(Em, x0, field)
    total = count + 1
    assert total in (1, ell, ell * ell), f"impossible {ell}-torsion count {total}"
    rank = 0 if total == 1 else 1 if total == ell else 2
    return AbelianGroup(tuple([ell] * rank))


@dataclass(frozen=True)
class GrowthReport:
    """Everything computed about torsion growth of E over Q(sqrt(d)).

    The 2-primary side is reported only up to E(L)[2]; orders 4 and 8
    over L are out of scope, and quotient_odd_part tracks the odd part.
    """

    d: int
    base_torsion: TorsionGroup
    twist_torsion: TorsionGroup
    odd_L_torsion: AbelianGroup
    two_torsion_L: AbelianGroup
    growth_primes: frozenset[int]
    quotient_odd_part: int
    oracle_checked: bool


def _odd_primes_of(g: AbelianGroup) -> set[int]:
    out: set[int] = set()
    for f in g.invariant_factors:
        out.update(p for p in factorize(f).primes() if p != 2)
    return out


def _ell_part(g: AbelianGroup, ell: int) -> AbelianGroup:
    """The ell-torsion subgroup of g (one Z/ell per factor ell divides)."""
    return AbelianGroup(tuple(ell for f in g.invariant_factors if f % ell == 0))


def growth_report(
    E: WeierstrassCurve,
    d: int,
    run_ell_oracle: bool = False,
    primes_for_bounds: int = 5,
) -> GrowthReport:
    """Aggregate growth data for E over Q(sqrt(d)).

    With run_ell_oracle=True the direct division-polynomial computation
    over L is rerun for l in {3, 5, 7} and must agree with the twist
    decomposition; a mismatch is an implementation bug and raises.
    """
    d0 = _normalize_d(d)
    base = torsion_subgroup(E, primes_for_bounds)
    twist = torsion_subgroup(twist_minimal(E, d0), primes_for_bounds)
    base_odd = base.group().odd_part()
    odd_L = base_odd.direct_sum(twist.group().odd_part())
    two_L = two_torsion_over_L(E, d0)
    growth: set[int] = set()
    for p in _odd_primes_of(odd_L):
        v_base = valuation(base_odd.order, p) if base_odd.order % p == 0 else 0
        if valuation(odd_L.order, p) > v_base:
            growth.add(p)
    if two_L.rank > two_torsion_rank_over_Q(E):
        growth.add(2)
    quotient = odd_L.order // base_odd.order
    checked = False
    if run_ell_oracle:
        for ell in (3, 5, 7):
            direct = direct_ell_torsion_over_L(E, d0, ell)
            via_twist = _ell_part(odd_L, ell)
            if direct != via_twist:
                raise AssertionError(
                    f"oracle disagreement at ell={ell} for {E}, d={d0}: "
                    f"direct {direct} vs decomposition {via_twist}"
                )
        checked = True
    return GrowthReport(
        d0, base, twist, odd_L, two_L, frozenset(growth), quotient, checked
    )
