"""Mechanical verdicts for the odd-order twist-torsion statements.

Each checker evaluates its hypotheses and, only when they hold, its
conclusion, from data computed elsewhere in the library.  A verdict with
true hypotheses and a false conclusion can only mean an implementation
bug (everything checked is proven), so run_all raises Violation on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .arith import factorize, is_prime, squarefree_part
from .curve import WeierstrassCurve
from .errors import NotPrime, Violation
from .localdata import (
    bad_primes,
    conductor,
    tamagawa_product,
    twist_reduction_at_twisting_primes,
)
from .quadfield import heegner_check, make_field
from .quadtorsion import growth_report, twist_minimal, two_torsion_rank_over_Q
from .torsion import torsion_subgroup


class TheoremId(Enum):
    TWIST_NO_LARGE_TORSION = "Thm_TwistNoLargeTorsion"
    LOCAL_TWIST = "Cor_LocalTwist"
    RAMIFIED_PRIMES_BAD = "Thm_RamifiedPrimesBad"
    TORSION_GROWTH_POWER_OF_2 = "Thm_TorsionGrowthPowerOf2"
    HEEGNER = "Cor_Heegner"


@dataclass(frozen=True)
class TheoremVerdict:
    theorem_id: TheoremId
    hypotheses_hold: bool
    conclusion_holds: Optional[bool]
    evidence: dict

    def __post_init__(self):
        assert (self.conclusion_holds is None) == (not self.hypotheses_hold)

    def violated(self) -> bool:
        return self.hypotheses_hold and self.conclusion_holds is False

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem_id.value,
            "hypotheses_hold": self.hypotheses_hold,
            "conclusion_holds": self.conclusion_holds,
            "evidence": self.evidence,
        }


def _torsion_order_is_2_3_smooth(order: int) -> bool:
    return all(p in (2, 3) for p in factorize(order).primes()) if order > 1 else True


def check_twist_no_large_torsion(E: WeierstrassCurve, d: int) -> TheoremVerdict:
    """Squarefree d with a prime divisor p > 3 away from N kills torsion
    of prime order > 3 on the twist."""
    d0 = squarefree_part(d).squarefree
    N = conductor(E)
    witnesses = [p for p in factorize(d0).primes() if p > 3 and N % p != 0]
    evidence = {"d": d0, "conductor": N, "witness_primes": witnesses}
    if not witnesses:
        return TheoremVerdict(TheoremId.TWIST_NO_LARGE_TORSION, False, None, evidence)
    tw = torsion_subgroup(twist_minimal(E, d0)) if d0 != 1 else torsion_subgroup(E)
    evidence["twist_torsion"] = str(tw.group())
    conclusion = _torsion_order_is_2_3_smooth(tw.order)
    return TheoremVerdict(TheoremId.TWIST_NO_LARGE_TORSION, True, conclusion, evidence)


def check_local_twist_corollary(E: WeierstrassCurve, d: int, p: int) -> TheoremVerdict:
    """p | d ramified, p good for E, p > 3: the twist has no rational
    point of order p, nor of any prime order > 3."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    d0 = squarefree_part(d).squarefree
    N = conductor(E)
    hyp = d0 % p == 0 and N % p != 0 and p > 3
    evidence = {
        "d": d0,
        "p": p,
        "p_divides_d": d0 % p == 0,
        "p_good_for_E": N % p != 0,
        "p_greater_3": p > 3,
    }
    if not hyp:
        return TheoremVerdict(TheoremId.LOCAL_TWIST, False, None, evidence)
    tw = torsion_subgroup(twist_minimal(E, d0)) if d0 != 1 else torsion_subgroup(E)
    evidence["twist_torsion"] = str(tw.group())
    no_p_point = tw.order % p != 0
    no_large = _torsion_order_is_2_3_smooth(tw.order)
    evidence["no_point_of_order_p"] = no_p_point
    evidence["no_prime_order_above_3"] = no_large
    return TheoremVerdict(TheoremId.LOCAL_TWIST, True, no_p_point and no_large, evidence)


def check_ramified_primes_bad(E: WeierstrassCurve, d: int) -> TheoremVerdict:
    """Odd torsion growth at a prime p >= 5 forces every ramified prime
    of Q(sqrt(d)) to be a bad prime of E."""
    report = growth_report(E, d)
    field = make_field(report.d)
    growth_big = sorted(p for p in report.growth_primes if p >= 5)
    evidence = {
        "d": report.d,
        "growth_primes": sorted(report.growth_primes),
        "witness_growth_primes": growth_big,
        "ramified_primes": sorted(field.ramified_primes),
    }
    if not growth_big:
        return TheoremVerdict(TheoremId.RAMIFIED_PRIMES_BAD, False, None, evidence)
    bad = bad_primes(E)
    evidence["bad_primes"] = sorted(bad)
    conclusion = field.ramified_primes <= bad
    return TheoremVerdict(TheoremId.RAMIFIED_PRIMES_BAD, True, conclusion, evidence)


def check_growth_power_of_2(E: WeierstrassCurve, d: int) -> TheoremVerdict:
    """Bad primes unramified in L: (i) no growth prime > 3; (ii) if some
    p != 3 ramifies, the odd growth quotient is trivial."""
    report = growth_report(E, d)
    field = make_field(report.d)
    bad = bad_primes(E)
    part1_hyp = all(p not in field.ramified_primes for p in bad)
    part2_hyp = part1_hyp and any(p != 3 for p in field.ramified_primes)
    kodaira = {
        str(p): rd.kodaira.label
        for p, rd in twist_reduction_at_twisting_primes(E, report.d).items()
    }
    evidence = {
        "d": report.d,
        "bad_primes": sorted(bad),
        "ramified_primes": sorted(field.ramified_primes),
        "part1_hypotheses": part1_hyp,
        "part2_hypotheses": part2_hyp,
        "growth_primes": sorted(report.growth_primes),
        "quotient_odd_part": report.quotient_odd_part,
        "twist_kodaira_at_twisting_primes": kodaira,
    }
    if not part1_hyp:
        return TheoremVerdict(TheoremId.TORSION_GROWTH_POWER_OF_2, False, None, evidence)
    part1_concl = all(p <= 3 for p in report.growth_primes)
    evidence["part1_conclusion"] = part1_concl
    conclusion = part1_concl
    if part2_hyp:
        part2_concl = report.quotient_odd_part == 1
        evidence["part2_conclusion"] = part2_concl
        conclusion = conclusion and part2_concl
    return TheoremVerdict(TheoremId.TORSION_GROWTH_POWER_OF_2, True, conclusion, evidence)


def check_heegner_corollary(E: WeierstrassCurve, d: int) -> TheoremVerdict:
    """Heegner hypothesis for an imaginary L != Q(sqrt(-3)): no odd
    torsion growth; with trivial E(Q)[2], no growth visible at all.

    Checked without any Heegner-point nontriviality hypothesis, which
    only broadens the claim being verified; part (ii) is verified up to
    the uncomputed 2-primary torsion above level 2.
    """
    report = growth_report(E, d)
    field = make_field(report.d)
    N = conductor(E)
    heegner = heegner_check(field, N)
    hyp = field.imaginary and field.d != -3 and heegner.holds
    evidence = {
        "d": report.d,
        "conductor": N,
        "imaginary": field.imaginary,
        "field_is_sqrt_minus_3": field.d == -3,
        "heegner_hypothesis": heegner.holds,
        "heegner_reason": heegner.reason,
        "conductor_prime_splittings": {str(p): s.value for p, s in heegner.splittings},
        "tamagawa_product": tamagawa_product(E),
        "u_L": field.u,
        "note": "no Heegner-point hypothesis assumed; 2-primary part checked only at level 2",
    }
    if not hyp:
        return TheoremVerdict(TheoremId.HEEGNER, False, None, evidence)
    part1 = report.quotient_odd_part == 1
    evidence["quotient_odd_part"] = report.quotient_odd_part
    evidence["part1_conclusion"] = part1
    conclusion = part1
    if two_torsion_rank_over_Q(E) == 0:
        part2 = report.two_torsion_L.is_trivial() and part1
        evidence["two_torsion_over_L"] = str(report.two_torsion_L)
        evidence["part2_conclusion"] = part2
        conclusion = conclusion and part2
    else:
        evidence["part2_conclusion"] = None  # applies only for trivial E(Q)[2]
    return TheoremVerdict(TheoremId.HEEGNER, True, conclusion, evidence)


def _local_twist_witness(E: WeierstrassCurve, d0: int) -> int:
    """Deterministic prime for the local corollary inside run_all."""
    N = conductor(E)
    qualifying = [p for p in factorize(d0).primes() if p > 3 and N % p != 0]
    if qualifying:
        return max(qualifying)
    ps = factorize(d0).primes()
    return max(ps) if ps else 2


def run_all(E: WeierstrassCurve, d: int) -> list[TheoremVerdict]:
    """Every checker on (E, d); raises Violation on any broken conclusion."""
    report = growth_report(E, d)  # validates d and warms the caches
    d0 = report.d
    verdicts = [
        check_twist_no_large_torsion(E, d0),
        check_local_twist_corollary(E, d0, _local_twist_witness(E, d0)),
        check_ramified_primes_bad(E, d0),
        check_growth_power_of_2(E, d0),
        check_heegner_corollary(E, d0),
    ]
    # structural implications between the checkers
    by_id = {v.theorem_id: v for v in verdicts}
    if by_id[TheoremId.TWIST_NO_LARGE_TORSION].hypotheses_hold:
        assert by_id[TheoremId.LOCAL_TWIST].hypotheses_hold
        assert (
            by_id[TheoremId.TWIST_NO_LARGE_TORSION].conclusion_holds
            == by_id[TheoremId.LOCAL_TWIST].evidence["no_prime_order_above_3"]
        )
    if by_id[TheoremId.HEEGNER].hypotheses_hold:
        growth = by_id[TheoremId.TORSION_GROWTH_POWER_OF_2]
        assert growth.evidence["part1_hypotheses"] and growth.evidence["part2_hypotheses"]
    broken = [v for v in verdicts if v.violated()]
    if broken:
        raise Violation(
            f"proven statement failed on {E} with d={d0}: "
            + ", ".join(v.theorem_id.value for v in broken),
            broken,
        )
    return verdicts
