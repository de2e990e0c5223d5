"""Weierstrass models: invariants, transformations, twists, minimal models."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistlab.curve import (
    ModelTransformation,
    WeierstrassCurve,
    invariants,
    is_isomorphic_over_Q,
    minimal_model,
    parse_curve,
    quadratic_twist,
    short_model,
)
from twistlab.errors import CurveParseError, SingularCurve, ZeroInput

small_rational = st.fractions(min_value=-8, max_value=8, max_denominator=6)
small_curve = st.builds(
    WeierstrassCurve.of,
    st.integers(-8, 8),
    st.integers(-8, 8),
    st.integers(-8, 8),
    st.integers(-8, 8),
    st.integers(-8, 8),
).filter(lambda E: E.disc != 0)

nonzero_u = st.fractions(min_value=-4, max_value=4, max_denominator=6).filter(
    lambda u: u != 0
)
transformation = st.builds(
    ModelTransformation.of, nonzero_u, small_rational, small_rational, small_rational
)


def test_invariants_of_50a2():
    inv = invariants(parse_curve("[1,0,1,-76,298]"))
    assert inv.c4 == 3625
    assert inv.disc == -12500000


def test_invariants_trivial_examples():
    assert invariants(WeierstrassCurve.of(0, 0, 0, 1, 0)).j == 1728
    assert invariants(WeierstrassCurve.of(0, 0, 0, 0, 1)).disc == -432


def test_invariants_singular():
    with pytest.raises(SingularCurve):
        invariants(WeierstrassCurve.of(0, 0, 0, 0, 0))


@given(small_curve)
def test_invariant_identities(E):
    inv = invariants(E)
    assert 4 * inv.b8 == inv.b2 * inv.b6 - inv.b4 * inv.b4
    assert 1728 * inv.disc == inv.c4**3 - inv.c6**2
    assert inv.j == inv.c4**3 / inv.disc


@given(small_curve, transformation)
def test_transformation_action(E, T):
    E2 = T.apply(E)
    inv, inv2 = invariants(E), invariants(E2)
    assert inv2.disc == inv.disc / T.u**12
    assert inv2.c4 == inv.c4 / T.u**4
    assert inv2.c6 == inv.c6 / T.u**6
    assert T.inverse().apply(E2) == E


@given(small_curve, transformation, transformation)
def test_transformation_composition(E, T1, T2):
    assert T1.then(T2).apply(E) == T2.apply(T1.apply(E))
    assert T1.then(T1.inverse()).is_identity()


@given(small_curve, transformation)
def test_point_map_round_trip(E, T):
    # map a synthetic affine pair through and back
    P = (Fraction(2, 3), Fraction(-5, 7))
    Q = T.apply_to_point(P)
    assert T.inverse().apply_to_point(Q) == P


def test_short_model_is_isomorphic():
    E = parse_curve("[1,0,1,-76,298]")
    S, T = short_model(E)
    assert S.a1 == S.a2 == S.a3 == 0
    assert T.apply(E) == S
    assert invariants(S).j == invariants(E).j


def test_quadratic_twist_examples():
    E19 = parse_curve("[0,1,1,-9,-15]")
    tw = minimal_model(quadratic_twist(E19, -3))[0]
    assert is_isomorphic_over_Q(tw, parse_curve("[0,0,1,-84,315]")) is not None
    E50 = parse_curve("[1,0,1,-76,298]")
    tw = minimal_model(quadratic_twist(E50, 5))[0]
    assert is_isomorphic_over_Q(tw, parse_curve("[1,1,1,-3,1]")) is not None
    assert is_isomorphic_over_Q(quadratic_twist(E50, 1), E50) is not None


def test_quadratic_twist_errors():
    with pytest.raises(ZeroInput):
        quadratic_twist(parse_curve("[0,0,0,1,0]"), 0)
    with pytest.raises(SingularCurve):
        quadratic_twist(WeierstrassCurve.of(0, 0, 0, 0, 0), 5)


@settings(max_examples=60)
@given(small_curve, st.sampled_from([d for d in range(-15, 16) if d not in (0,)]))
def test_twist_preserves_j_and_is_involutive(E, d):
    tw = quadratic_twist(E, d)
    assert invariants(tw).j == invariants(E).j
    back = quadratic_twist(tw, d)
    assert is_isomorphic_over_Q(back, E) is not None


def test_minimal_model_examples():
    assert minimal_model(WeierstrassCurve.of(0, 0, 0, 0, 16))[0] == WeierstrassCurve.of(0, 0, 1, 0, 0)
    for lit in ("[0,0,1,-84,315]", "[1,0,1,-76,298]"):
        E = parse_curve(lit)
        M, T = minimal_model(E)
        assert M == E
        assert T.is_identity()


@settings(max_examples=60)
@given(small_curve)
def test_minimal_model_idempotent(E):
    M1, _ = minimal_model(E)
    M2, T2 = minimal_model(M1)
    assert M2 == M1 and T2.is_identity()
    assert M1.a1 in (0, 1) and M1.a3 in (0, 1) and M1.a2 in (-1, 0, 1)


@settings(max_examples=40)
@given(small_curve, transformation)
def test_minimal_model_is_model_independent(E, T):
    assert minimal_model(T.apply(E))[0] == minimal_model(E)[0]


def test_is_isomorphic_examples():
    E = parse_curve("[1,0,1,-76,298]")
    ident = is_isomorphic_over_Q(E, E)
    assert ident is not None and ident.is_identity()
    # 50a2 and 50b3 are twists of each other, so they share j; the
    # discriminant ratio 5^6 has no rational 12th root, hence no iso
    other = parse_curve("[1,1,1,-3,1]")
    assert invariants(E).j == invariants(other).j
    assert invariants(E).disc / invariants(other).disc == 5**6
    assert is_isomorphic_over_Q(E, other) is None


def test_parse_curve():
    E = parse_curve(" [1, 0, 1, -76, 298] ")
    assert E == WeierstrassCurve.of(1, 0, 1, -76, 298)
    E = parse_curve("[1/2,0,3,-7/6,298]")
    assert E.a1 == Fraction(1, 2) and E.a4 == Fraction(-7, 6)
    for bad in ("1,2,3,4,5", "[1,2,3]", "[1,2,3,4,x]", "[1,2,3,4,1/0]"):
        with pytest.raises(CurveParseError):
            parse_curve(bad)


def test_literal_round_trip():
    for lit in ("[1,0,1,-76,298]", "[1/2,0,3,-7/6,298]"):
        assert parse_curve(lit).literal() == lit
