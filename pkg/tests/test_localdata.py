"""Tate's algorithm: Kodaira types, conductor exponents, Tamagawa numbers."""

import random

import pytest

from twistlab.arith import _factorize_core, valuation
from twistlab.curve import (
    ModelTransformation,
    WeierstrassCurve,
    minimal_model,
    parse_curve,
    quadratic_twist,
)
from twistlab.errors import NotPrime, SingularCurve
from twistlab.localdata import (
    ReductionClass,
    _tate_local,
    bad_primes,
    conductor,
    reduction_summary,
    tamagawa_product,
    tate_algorithm,
    twist_reduction_at_twisting_primes,
)

CURVES = {
    "50a2": parse_curve("[1,0,1,-76,298]"),
    "50b3": parse_curve("[1,1,1,-3,1]"),
    "19a2": parse_curve("[0,1,1,-9,-15]"),
    "171b2": parse_curve("[0,0,1,-84,315]"),
    "26.b1": parse_curve("[1,-1,1,-213,-1257]"),
    "1225.b2": parse_curve("[1,1,1,-8,6]"),
    "50a4": parse_curve("[1,0,1,549,-2202]"),
}


@pytest.mark.parametrize(
    "label,expected",
    [
        ("50a2", 50),
        ("50b3", 50),
        ("19a2", 19),
        ("171b2", 171),
        ("26.b1", 26),
        ("1225.b2", 1225),
        ("50a4", 50),
    ],
)
def test_conductor_fixtures(label, expected):
    assert conductor(CURVES[label]) == expected


def test_good_prime():
    rd = tate_algorithm(CURVES["50a2"], 7)
    assert rd.kodaira.label == "I0" and rd.f_p == 0 and rd.c_p == 1
    assert rd.reduction_class is ReductionClass.GOOD


def test_multiplicative_at_19():
    rd = tate_algorithm(CURVES["171b2"], 19)
    assert rd.kodaira.tag == "I" and rd.kodaira.n >= 1
    assert rd.f_p == 1


def test_twist_of_50a2_by_7_is_additive_I0star():
    tw = minimal_model(quadratic_twist(CURVES["50a2"], 7))[0]
    rd = tate_algorithm(tw, 7)
    assert rd.kodaira.label == "I0*"
    assert rd.f_p == 2
    assert rd.reduction_class is ReductionClass.ADDITIVE


def test_tamagawa_products():
    # 50a2: order-3 point forces nonsplit I5 at 2 (c=1) and c=3 at the IV*
    # fiber over 5; 50b3: order-5 point forces split I5 at 2 (c=5), II at 5
    assert tamagawa_product(CURVES["50a2"]) == 3
    assert tamagawa_product(CURVES["50b3"]) == 5
    # 171b2: recorded value c_3 * c_19 = 2 * 3
    assert tamagawa_product(CURVES["171b2"]) == 6
    assert tamagawa_product(WeierstrassCurve.of(0, 0, 0, 1, 0)) >= 1


def test_bad_primes_examples():
    assert bad_primes(CURVES["50a4"]) == {2, 5}
    assert bad_primes(CURVES["19a2"]) == {19}
    assert bad_primes(WeierstrassCurve.of(0, 0, 0, -1, 0)) == {2}


def test_errors():
    with pytest.raises(NotPrime):
        tate_algorithm(CURVES["50a2"], 6)
    with pytest.raises(SingularCurve):
        tate_algorithm(WeierstrassCurve.of(0, 0, 0, 0, 0), 5)


def test_conductor_exponent_constraints():
    for label, E in CURVES.items():
        vmin = {rd.p: valuation(minimal_model(E)[0].disc, rd.p) for rd in reduction_summary(E)}
        for rd in reduction_summary(E):
            assert 1 <= rd.f_p <= vmin[rd.p]
            if rd.p >= 5:
                assert rd.f_p <= 2
            good = rd.kodaira.is_good()
            assert good == (rd.f_p == 0)
            mult = rd.kodaira.tag == "I" and rd.kodaira.n >= 1
            assert mult == (rd.f_p == 1)


def _table_type(E, p):
    """Independent Kodaira classification for p >= 5 on a p-minimal model."""
    vd = valuation(E.disc, p)
    if vd == 0:
        return "I0"
    vc4 = valuation(E.c4, p) if E.c4 != 0 else 99
    if vc4 == 0:
        return f"I{vd}"
    if vd in (2, 3, 4):
        return {2: "II", 3: "III", 4: "IV"}[vd]
    if vd == 6:
        return "I0*"
    if vd >= 7 and vc4 == 2:
        return f"I{vd - 6}*"
    return {8: "IV*", 9: "III*", 10: "II*"}[vd]


def test_kodaira_matches_valuation_table_at_p_ge_5():
    rng = random.Random(31337)
    checked = 0
    while checked < 600:
        E = WeierstrassCurve.of(*(rng.randint(-6, 6) for _ in range(5)))
        if E.disc == 0:
            continue
        for p in _factorize_core(int(E.disc)).primes():
            if p < 5:
                continue
            rd = tate_algorithm(E, p)
            local_minimal = _tate_local(E, p)[1]
            assert rd.kodaira.label == _table_type(local_minimal, p), (E, p)
            checked += 1


def test_kodaira_additive_via_twists():
    rng = random.Random(4242)
    for _ in range(40):
        E = WeierstrassCurve.of(*(rng.randint(-4, 4) for _ in range(5)))
        if E.disc == 0:
            continue
        p = rng.choice([5, 7, 11, 13])
        tw = minimal_model(quadratic_twist(E, p * rng.choice([1, -1])))[0]
        rd = tate_algorithm(tw, p)
        assert rd.kodaira.label == _table_type(tw, p)
        assert rd.reduction_class is ReductionClass.ADDITIVE


def test_conductor_invariant_under_transformation():
    rng = random.Random(11)
    from fractions import Fraction

    for _ in range(25):
        E = WeierstrassCurve.of(*(rng.randint(-5, 5) for _ in range(5)))
        if E.disc == 0:
            continue
        N = conductor(E)
        T = ModelTransformation.of(
            Fraction(rng.choice([1, 2, 3, 6]), rng.choice([1, 2, 5])),
            rng.randint(-3, 3),
            rng.randint(-2, 2),
            rng.randint(-3, 3),
        )
        assert conductor(T.apply(E)) == N


def test_split_classification_matches_smooth_point_counts():
    # split multiplicative reduction has p-1 smooth points, nonsplit p+1;
    # the counts are computed here by brute force, independent of Tate
    rng = random.Random(314159)
    checked = 0
    while checked < 120:
        E = WeierstrassCurve.of(*(rng.randint(-6, 6) for _ in range(5)))
        if E.disc == 0:
            continue
        Em = minimal_model(E)[0]
        for p in _factorize_core(int(Em.disc)).primes():
            if p == 2 or p > 40:
                continue
            rd = tate_algorithm(Em, p)
            if rd.reduction_class not in (
                ReductionClass.MULTIPLICATIVE_SPLIT,
                ReductionClass.MULTIPLICATIVE_NONSPLIT,
            ):
                continue
            model = _tate_local(Em, p)[1]
            a1, a2, a3, a4, a6 = (int(a) % p for a in model.ainvs)
            affine = sum(
                1
                for x in range(p)
                for y in range(p)
                if (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6)
                % p
                == 0
            )
            smooth_order = affine - 1 + 1  # drop the node, add infinity
            split = rd.reduction_class is ReductionClass.MULTIPLICATIVE_SPLIT
            assert smooth_order == (p - 1 if split else p + 1), (Em, p)
            checked += 1


def test_I0star_tamagawa_matches_short_cubic_roots():
    # at a good prime p | d, the component count of the twist's I0* fiber
    # is 1 + the number of roots mod p of E's short-model cubic
    from twistlab.curve import invariants

    rng = random.Random(2718)
    checked = 0
    while checked < 60:
        E = WeierstrassCurve.of(*(rng.randint(-5, 5) for _ in range(5)))
        if E.disc == 0:
            continue
        p = rng.choice([5, 7, 11, 13, 17])
        if int(invariants(E).disc) % p == 0:
            continue
        tw = minimal_model(quadratic_twist(E, p * rng.choice([1, -1])))[0]
        rd = tate_algorithm(tw, p)
        assert rd.kodaira.label == "I0*"
        A, B = -27 * int(invariants(E).c4), -54 * int(invariants(E).c6)
        roots = sum(1 for x in range(p) if (x**3 + A * x + B) % p == 0)
        assert rd.c_p == 1 + roots, (E, p)
        checked += 1


def test_wild_conductor_exponent_bounds():
    # f_2 <= 8 and f_3 <= 5 are known sharp bounds; the algorithm never
    # consults them, so they are an independent check on the wild branches
    rng = random.Random(777)
    for _ in range(400):
        E = WeierstrassCurve.of(*(rng.randint(-9, 9) for _ in range(5)))
        if E.disc == 0:
            continue
        tw = minimal_model(quadratic_twist(E, rng.choice([-6, -3, -2, -1, 2, 3, 6])))[0]
        for p in (2, 3):
            if int(tw.disc) % p:
                continue
            rd = tate_algorithm(tw, p)
            assert rd.f_p <= (8 if p == 2 else 5)


def test_twist_at_good_primes_gives_I0star():
    # primes p > 3 dividing d but prime to N force type I0* with f_p = 2
    for label in ("50a2", "19a2", "1225.b2"):
        E = CURVES[label]
        for d in (7, -11, 91):
            data = twist_reduction_at_twisting_primes(E, d)
            for p, rd in data.items():
                assert rd.kodaira.label == "I0*", (label, d, p)
                assert rd.f_p == 2
                assert rd.reduction_class is ReductionClass.ADDITIVE
