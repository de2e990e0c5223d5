"""Rational torsion: division polynomials, point arithmetic, group structure."""

import random
from fractions import Fraction

import pytest

from twistlab.curve import WeierstrassCurve, parse_curve
from twistlab.errors import BadPrimeSupplied, PointNotOnCurve, SingularCurve
from twistlab.polys import Poly
from twistlab.torsion import (
    MAZUR_STRUCTURES,
    division_polynomial,
    ec_add,
    ec_mul,
    ec_neg,
    fp_point_order,
    good_odd_primes,
    point_order,
    torsion_bound_via_reduction,
    torsion_subgroup,
    _division_f,
)

E50a2 = parse_curve("[1,0,1,-76,298]")
E50b3 = parse_curve("[1,1,1,-3,1]")
E171b2 = parse_curve("[0,0,1,-84,315]")
E50a4 = parse_curve("[1,0,1,549,-2202]")


def test_division_polynomial_small():
    E = WeierstrassCurve.of(0, 0, 0, 3, -2)
    assert division_polynomial(E, 1) == Poly.of(1)
    A, B = 3, -2
    assert division_polynomial(E, 3) == Poly.of(-A * A, 12 * B, 6 * A, 0, 3)
    assert division_polynomial(E, 2) == Poly.of(E.b6, 2 * E.b4, E.b2, 4)


def test_division_polynomial_degrees():
    for n in range(3, 13):
        f = _division_f(E50a2, n)
        assert f.degree == ((n * n - 1) // 2 if n % 2 else (n * n - 4) // 2)


def test_division_polynomial_roots_are_torsion_x():
    # independent check: multiples of a known order-5 point are roots of f_5
    P = (Fraction(-1), Fraction(-2))
    assert E50b3.contains(*P)
    f5 = _division_f(E50b3, 5)
    Q = P
    for _ in range(4):
        assert f5(Q[0]) == 0
        Q = ec_add(E50b3, Q, P)
    assert Q is None  # 5P = O


def test_division_polynomial_errors():
    with pytest.raises(SingularCurve):
        division_polynomial(WeierstrassCurve.of(0, 0, 0, 0, 0), 3)
    with pytest.raises(ValueError):
        division_polynomial(E50a2, 0)


def test_point_arithmetic_basics():
    E = WeierstrassCurve.of(0, 0, 1, 0, 0)  # y^2 + y = x^3
    P = (Fraction(0), Fraction(0))
    assert ec_mul(E, 2, P) == (Fraction(0), Fraction(-1))
    assert ec_mul(E, 3, P) is None
    assert point_order(E, P, 12) == 3
    assert ec_add(E, P, ec_neg(E, P)) is None
    assert point_order(E, None, 12) == 1


def test_point_order_on_fixture():
    gen = torsion_subgroup(E50a2).generators[0]
    assert point_order(E50a2, gen.xy(), 12) == 3


def test_point_order_errors():
    with pytest.raises(PointNotOnCurve):
        point_order(E50a2, (Fraction(0), Fraction(0)), 12)


def test_point_order_infinite_marker():
    # (0,0) on y^2 + y = x^3 - x has infinite order (rank-1 curve)
    E = WeierstrassCurve.of(0, 0, 1, -1, 0)
    assert point_order(E, (Fraction(0), Fraction(0)), 12) is None


@pytest.mark.parametrize(
    "curve,structure",
    [
        (E50a2, "Z/3Z"),
        (E50b3, "Z/5Z"),
        (E171b2, "Z/3Z"),
        (E50a4, "0"),
    ],
)
def test_torsion_fixtures(curve, structure):
    assert torsion_subgroup(curve).structure == structure


def test_torsion_full_two():
    E = WeierstrassCurve.of(0, 0, 0, -1, 0)  # y^2 = x^3 - x
    T = torsion_subgroup(E)
    assert T.invariant_factors == (2, 2)
    assert T.order == 4
    assert len(T.generators) == 2


def test_torsion_generators_verify():
    for E in (E50a2, E50b3, E171b2):
        T = torsion_subgroup(E)
        for g in T.generators:
            assert E.contains(g.x, g.y)
            assert point_order(E, g.xy(), 12) == g.order
        assert T.invariant_factors in MAZUR_STRUCTURES


def test_torsion_bound_examples():
    b = torsion_bound_via_reduction(E50a2, [3, 7, 11])
    assert b % 3 == 0
    b = torsion_bound_via_reduction(E50b3, [3, 7])
    assert b % 5 == 0
    # single prime: the bound is the point count itself (brute forced here)
    b = torsion_bound_via_reduction(E50a2, [3])
    count = 1
    for x in range(3):
        for y in range(3):
            if (y * y + x * y + y - x**3 + 76 * x - 298) % 3 == 0:
                count += 1
    assert count == b == 3


def test_torsion_bound_errors():
    with pytest.raises(BadPrimeSupplied):
        torsion_bound_via_reduction(E50a2, [2])
    with pytest.raises(BadPrimeSupplied):
        torsion_bound_via_reduction(E50a2, [5])  # bad prime
    with pytest.raises(BadPrimeSupplied):
        torsion_bound_via_reduction(E50a2, [])


def test_torsion_order_divides_bound():
    for E in (E50a2, E50b3, E171b2, E50a4):
        T = torsion_subgroup(E)
        bound = torsion_bound_via_reduction(E, good_odd_primes(E, 5))
        assert bound % T.order == 0


def test_generator_orders_survive_reduction():
    for E in (E50a2, E50b3, E171b2):
        T = torsion_subgroup(E)
        for p in good_odd_primes(E, 10, 50):
            for g in T.generators:
                assert fp_point_order(E, g.xy(), p) == g.order


def _tate_normal_curve(b, c):
    """y^2 + (1-c)xy - by = x^3 - bx^2 with (0,0) a distinguished point."""
    return WeierstrassCurve.of(1 - c, -b, -b, 0, 0)


def test_tate_normal_form_completeness():
    # whenever (0,0) is torsion of order n <= 12, the subgroup must see it
    rng = random.Random(77)
    seen_orders = set()
    trials = 0
    while trials < 60:
        b = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
        c = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
        E = _tate_normal_curve(b, c)
        if b == 0 or E.disc == 0:
            continue
        trials += 1
        n = point_order(E, (Fraction(0), Fraction(0)), 12)
        if n is None:
            continue
        T = torsion_subgroup(E)
        assert T.order % n == 0, (b, c, n, T.structure)
        seen_orders.add(n)
    assert seen_orders, "no torsion points sampled at all"


@pytest.mark.parametrize(
    "b,c,n",
    [
        (Fraction(2), Fraction(0), 4),  # c = 0 family
        (Fraction(3), Fraction(3), 5),  # b = c family
        (Fraction(6), Fraction(2), 6),  # b = c + c^2 family
        (Fraction(4), Fraction(2), 7),  # b = d^3-d^2, c = d^2-d at d = 2
        (Fraction(3), Fraction(3, 2), 8),  # b = (2d-1)(d-1), c = b/d at d = 2
        (Fraction(-6), Fraction(-2), 9),
        (Fraction(2, 3), Fraction(-2, 3), 10),
        (Fraction(10, 3), Fraction(2), 12),
    ],
)
def test_known_torsion_families(b, c, n):
    E = _tate_normal_curve(b, c)
    assert point_order(E, (Fraction(0), Fraction(0)), 12) == n
    T = torsion_subgroup(E)
    assert T.order % n == 0
    assert T.invariant_factors in MAZUR_STRUCTURES


@pytest.mark.parametrize(
    "curve,factors",
    [
        # witnesses for every rank-2 shape in the classification
        (WeierstrassCurve.of(0, 0, 0, -1, 0), (2, 2)),
        (WeierstrassCurve.of(0, -97, 0, 2352, 0), (2, 4)),
        (WeierstrassCurve.of(0, -59, 0, 864, 0), (2, 6)),
        (
            WeierstrassCurve.of(
                Fraction(449, 14), -435, -435, 0, 0
            ),
            (2, 8),
        ),
    ],
)
def test_rank_two_structures(curve, factors):
    T = torsion_subgroup(curve)
    assert T.invariant_factors == factors
    gen_orders = sorted(g.order for g in T.generators)
    assert gen_orders == sorted(factors)
    for g in T.generators:
        assert point_order(curve, g.xy(), 12) == g.order
    bound = torsion_bound_via_reduction(curve, good_odd_primes(curve, 6))
    assert bound % T.order == 0
