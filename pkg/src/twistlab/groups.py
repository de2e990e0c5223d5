"""Finite abelian groups in canonical invariant-factor form."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce


def _invariant_factors(prime_powers: list[tuple[int, int]]) -> tuple[int, ...]:
    """Canonical d_1 | d_2 | ... from a multiset of (prime, exponent) parts."""
    by_prime: dict[int, list[int]] = {}
    for p, e in prime_powers:
        if e > 0:
            by_prime.setdefault(p, []).append(e)
    for exps in by_prime.values():
        exps.sort(reverse=True)
    width = max((len(v) for v in by_prime.values()), default=0)
    factors = []
    for i in range(width):
        d = 1
        for p, exps in by_prime.items():
            if i < len(exps):
                d *= p ** exps[i]
        factors.append(d)
    factors.reverse()  # ascending, so each divides the next
    return tuple(factors)


@dataclass(frozen=True)
class AbelianGroup:
    """Finite abelian group as ascending invariant factors (each > 1)."""

    invariant_factors: tuple[int, ...]

    @staticmethod
    def trivial() -> "AbelianGroup":
        return AbelianGroup(())

    @staticmethod
    def cyclic(n: int) -> "AbelianGroup":
        return AbelianGroup((n,)) if n > 1 else AbelianGroup(())

    @staticmethod
    def of(*factor_list: int) -> "AbelianGroup":
        from .arith import factorize

        parts: list[tuple[int, int]] = []
        for n in factor_list:
            if n > 1:
                parts.extend(factorize(n).factors)
        return AbelianGroup(_invariant_factors(parts))

    @property
    def order(self) -> int:
        return reduce(lambda a, b: a * b, self.invariant_factors, 1)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def direct_sum(self, other: "AbelianGroup") -> "AbelianGroup":
        return AbelianGroup.of(*self.invariant_factors, *other.invariant_factors)

    def p_part(self, p: int) -> "AbelianGroup":
        from .arith import _int_valuation

        parts = []
        for d in self.invariant_factors:
            e = _int_valuation(d, p)
            if e:
                parts.append((p, e))
        return AbelianGroup(_invariant_factors(parts))

    def odd_part(self) -> "AbelianGroup":
        from .arith import _int_valuation

        factors = []
        for d in self.invariant_factors:
            odd = d >> _int_valuation(d, 2)
            if odd > 1:
                factors.append(odd)
        return AbelianGroup.of(*factors)

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "0"
        return " x ".join(f"Z/{d}Z" for d in self.invariant_factors)
