"""Division polynomials and the rational torsion subgroup.

Point arithmetic uses the full generalized Weierstrass addition law, so
the fixture equations (a1, a3 nonzero) never need a model change.  The
torsion search runs on the minimal model, filters candidate orders by
the reduction bound, finds x-coordinates as rational roots of division
polynomials, lifts y, and closes the witness set under addition.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from typing import Optional

from .arith import primes_below, valuation
from .curve import WeierstrassCurve, minimal_model
from .errors import BadPrimeSupplied, PointNotOnCurve, SingularCurve
from .groups import AbelianGroup
from .polys import Poly, rational_roots
from .quadfield import _rational_sqrt

#: Point representation: None is the identity, otherwise (x, y) Fractions.
Point = Optional[tuple[Fraction, Fraction]]

#: Torsion structures possible over Q (asserted post-hoc, never assumed).
MAZUR_STRUCTURES = frozenset(
    [()]
    + [(n,) for n in (2, 3, 4, 5, 6, 7, 8, 9, 10, 12)]
    + [(2, 2 * m) for m in (1, 2, 3, 4)]
)


def ec_neg(E: WeierstrassCurve, P: Point) -> Point:
    if P is None:
        return None
    x, y = P
    return (x, -y - E.a1 * x - E.a3)


def ec_add(E: WeierstrassCurve, P: Point, Q: Point) -> Point:
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    a1, a2, a3 = E.a1, E.a2, E.a3
    if x1 == x2:
        if y2 == -y1 - a1 * x1 - a3:
            return None
        lam = (3 * x1 * x1 + 2 * a2 * x1 + E.a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
    else:
        lam = (y2 - y1) / (x2 - x1)
    nu = y1 - lam * x1
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return (x3, y3)


def ec_mul(E: WeierstrassCurve, n: int, P: Point) -> Point:
    if n < 0:
        return ec_mul(E, -n, ec_neg(E, P))
    R: Point = None
    Q = P
    while n:
        if n & 1:
            R = ec_add(E, R, Q)
        Q = ec_add(E, Q, Q)
        n >>= 1
    return R


def point_order(E: WeierstrassCurve, P: Point, cap: int) -> Optional[int]:
    """Least n <= cap with n*P = O, or None when P survives the cap."""
    if E.disc == 0:
        raise SingularCurve(f"discriminant of {E} vanishes")
    if P is not None and not E.contains(*P):
        raise PointNotOnCurve(f"{P} is not on {E}")
    if P is None:
        return 1
    Q: Point = None
    for k in range(1, cap + 1):
        Q = ec_add(E, Q, P)
        if Q is None:
            return k
    return None


# --- division polynomials ---------------------------------------------------


def _two_division_poly(E: WeierstrassCurve) -> Poly:
    """S(x) = 4x^3 + b2 x^2 + 2 b4 x + b6, the square of psi_2."""
    return Poly.of(E.b6, 2 * E.b4, E.b2, 4)


@lru_cache(maxsize=None)
def _division_f(E: WeierstrassCurve, n: int) -> Poly:
    """Univariate part f_n: psi_n = f_n (n odd), psi_n = psi_2 * f_n (n even)."""
    if n == 0:
        return Poly.zero()
    if n in (1, 2):
        return Poly.of(1)
    b2, b4, b6, b8 = E.b2, E.b4, E.b6, E.b8
    if n == 3:
        return Poly.of(b8, 3 * b6, 3 * b4, b2, 3)
    if n == 4:
        return Poly.of(
            b4 * b8 - b6 * b6,
            b2 * b8 - b4 * b6,
            10 * b8,
            10 * b6,
            5 * b4,
            b2,
            2,
        )
    S = _two_division_poly(E)
    m, rem = divmod(n, 2)
    if rem:
        a, b = _division_f(E, m + 2), _division_f(E, m)
        c, d = _division_f(E, m - 1), _division_f(E, m + 1)
        if m % 2 == 0:
            return S * S * a * b * b * b - c * d * d * d
        return a * b * b * b - S * S * c * d * d * d
    fm = _division_f(E, m)
    lo, hi = _division_f(E, m - 1), _division_f(E, m + 1)
    return fm * (_division_f(E, m + 2) * lo * lo - _division_f(E, m - 2) * hi * hi)


def division_polynomial(E: WeierstrassCurve, n: int) -> Poly:
    """The n-division polynomial in x.

    For odd n this is psi_n itself.  For even n the y-part is factored
    out and replaced by its square, so the returned polynomial is
    univariate and vanishes exactly on x-coordinates of the nonzero
    points killed by n.
    """
    if E.disc == 0:
        raise SingularCurve(f"discriminant of {E} vanishes")
    if n < 1:
        raise ValueError("n must be >= 1")
    f = _division_f(E, n)
    if n % 2 == 0:
        return _two_division_poly(E) * f
    return f


# --- reduction mod p ---------------------------------------------------------


def _count_points_fp(E: WeierstrassCurve, p: int) -> int:
    """#E(F_p) for an odd prime p of good reduction (integral model)."""
    b2, b4, b6 = int(E.b2) % p, int(E.b4) % p, int(E.b6) % p
    count = 1
    for x in range(p):
        c = (((4 * x + b2) * x + 2 * b4) * x + b6) % p
        if c == 0:
            count += 1
        elif pow(c, (p - 1) // 2, p) == 1:
            count += 2
    return count


def good_odd_primes(E: WeierstrassCurve, count: int, bound: int = 100) -> list[int]:
    """The first `count` odd primes below bound where the minimal model is good.

    The bound stretches automatically if the discriminant eats too many
    small primes, so the list is never empty.
    """
    Em, _ = minimal_model(E)
    disc = int(Em.disc)
    while True:
        out = []
        for p in primes_below(bound):
            if p == 2 or disc % p == 0:
                continue
            out.append(p)
            if len(out) == count:
                return out
        if out and bound >= 100:
            return out
        bound *= 4


def torsion_bound_via_reduction(E: WeierstrassCurve, primes) -> int:
    """gcd of #E(F_p) over the listed odd good primes; |E(Q)_tors| divides it."""
    if E.disc == 0:
        raise SingularCurve(f"discriminant of {E} vanishes")
    Em, _ = minimal_model(E)
    disc = int(Em.disc)
    primes = list(primes)
    if not primes:
        raise BadPrimeSupplied("need at least one prime")
    bound = 0
    for p in primes:
        if p == 2 or disc % p == 0:
            raise BadPrimeSupplied(f"{p} is even or a bad prime")
        bound = gcd(bound, _count_points_fp(Em, p))
    return bound


def fp_point_order(E: WeierstrassCurve, P: Point, p: int, cap: int = 200) -> int:
    """Order of the reduction of P in E(F_p), p an odd good prime."""
    Em = E  # caller supplies the model the point lives on
    a = [int(v) % p for v in (Em.a1, Em.a2, Em.a3, Em.a4, Em.a6)]
    if P is None:
        return 1
    x, y = P
    if x.denominator % p == 0 or y.denominator % p == 0:
        raise BadPrimeSupplied(f"point has a pole at {p}")
    pt = (x.numerator * pow(x.denominator, -1, p) % p,
          y.numerator * pow(y.denominator, -1, p) % p)

    def add(P1, P2):
        if P1 is None:
            return P2
        if P2 is None:
            return P1
        x1, y1 = P1
        x2, y2 = P2
        if x1 == x2 and (y2 + y1 + a[0] * x1 + a[2]) % p == 0:
            return None
        if x1 == x2:
            lam = (3 * x1 * x1 + 2 * a[1] * x1 + a[3] - a[0] * y1) * pow(
                (2 * y1 + a[0] * x1 + a[2]) % p, -1, p
            ) % p
        else:
            lam = (y2 - y1) * pow((x2 - x1) % p, -1, p) % p
        nu = (y1 - lam * x1) % p
        x3 = (lam * lam + a[0] * lam - a[1] - x1 - x2) % p
        y3 = (-(lam + a[0]) * x3 - nu - a[2]) % p
        return (x3, y3)

    Q = None
    for k in range(1, cap + 1):
        Q = add(Q, pt)
        if Q is None:
            return k
    raise AssertionError(f"order of {P} mod {p} exceeds {cap}")


# --- torsion subgroup --------------------------------------------------------


@dataclass(frozen=True)
class TorsionPoint:
    """A rational torsion point with its exact order (None, None = identity)."""

    x: Optional[Fraction]
    y: Optional[Fraction]
    order: int

    def is_identity(self) -> bool:
        return self.x is None

    def xy(self) -> Point:
        return None if self.x is None else (self.x, self.y)

    def __str__(self) -> str:
        if self.is_identity():
            return "O"
        return f"({self.x}, {self.y}) of order {self.order}"


@dataclass(frozen=True)
class TorsionGroup:
    """E(Q)_tors in invariant-factor form with verified generator points."""

    invariant_factors: tuple[int, ...]
    order: int
    generators: tuple[TorsionPoint, ...]

    def group(self) -> AbelianGroup:
        return AbelianGroup.of(*self.invariant_factors)

    @property
    def structure(self) -> str:
        return str(self.group())

    def __str__(self) -> str:
        return self.structure


def _lift_y(E: WeierstrassCurve, x0: Fraction) -> list[Fraction]:
    """Rational y with (x0, y) on E."""
    a = E.a1 * x0 + E.a3
    delta = a * a + 4 * E.rhs(x0)
    r = _rational_sqrt(delta)
    if r is None:
        return []
    if r == 0:
        return [(-a) / 2]
    return [(-a + r) / 2, (-a - r) / 2]


def _points_of_order(E: WeierstrassCurve, q: int) -> list[Point]:
    """All rational points of exact order q (prime power q in 2..12)."""
    found = []
    if q == 2:
        xs = rational_roots(_two_division_poly(E))
        for x0 in xs:
            y0 = -(E.a1 * x0 + E.a3) / 2
            P = (x0, y0)
            assert E.contains(*P)
            found.append(P)
        return found
    for x0 in rational_roots(_division_f(E, q)):
        for y0 in _lift_y(E, x0):
            P = (x0, y0)
            if point_order(E, P, 12) == q:
                found.append(P)
    return found


def _closure(E: WeierstrassCurve, pts: set) -> set:
    pts = set(pts)
    changed = True
    while changed:
        changed = False
        snapshot = list(pts)
        for P in snapshot:
            for Q in snapshot:
                R = ec_add(E, P, Q)
                if R not in pts:
                    pts.add(R)
                    changed = True
        assert len(pts) <= 200, "runaway torsion closure"
    return pts


@lru_cache(maxsize=None)
def torsion_subgroup(E: WeierstrassCurve, bound_prime_count: int = 5) -> TorsionGroup:
    """Exact structure of E(Q)_tors with verified witness generators.

    bound_prime_count controls how many odd good primes feed the
    reduction bound that prunes the order search; the result does not
    depend on it.
    """
    if E.disc == 0:
        raise SingularCurve(f"discriminant of {E} vanishes")
    Em, Tm = minimal_model(E)
    bound = torsion_bound_via_reduction(Em, good_odd_primes(Em, bound_prime_count))
    pts: set = {None}
    for p in (2, 3, 5, 7, 11):
        vB = valuation(bound, p) if bound % p == 0 else 0
        q = p
        k = 1
        while vB >= k and q <= 12:
            pts.update(_points_of_order(Em, q))
            k += 1
            q *= p
    pts = _closure(Em, pts)
    order = len(pts)
    assert bound % order == 0, "torsion order must divide the reduction bound"
    orders = {P: point_order(Em, P, max(12, order)) for P in pts}
    exponent = reduce(lambda a, b: a * b // gcd(a, b), orders.values(), 1)
    if order == 1:
        factors: tuple[int, ...] = ()
        gens: list[Point] = []
    elif exponent == order:
        factors = (order,)
        gens = [next(P for P, o in orders.items() if o == exponent)]
    else:
        d1 = order // exponent
        assert exponent % d1 == 0, "not a rank-2 invariant factor pattern"
        factors = (d1, exponent)
        g2 = next(P for P, o in orders.items() if o == exponent)
        cyclic = {ec_mul(Em, k, g2) for k in range(exponent)}
        g1 = next(
            P for P, o in orders.items() if o == d1 and P not in cyclic
        )
        gens = [g1, g2]
    assert factors in MAZUR_STRUCTURES, f"structure {factors} outside Mazur's list"
    back = Tm.inverse()
    out_gens = []
    for P in gens:
        Q = back.apply_to_point(P)
        assert E.contains(*Q)
        out_gens.append(TorsionPoint(Q[0], Q[1], orders[P]))
    return TorsionGroup(factors, order, tuple(out_gens))
