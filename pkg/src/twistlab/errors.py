"""Exception hierarchy shared by every module of the library."""

from __future__ import annotations


class TwistlabError(Exception):
    """Base class for all errors raised by twistlab."""


class ZeroInput(TwistlabError):
    """An operation received 0 where a nonzero value is required."""


class FactorizationLimitExceeded(TwistlabError):
    """Input survived trial division plus the Pollard rho budget."""


class NotPrime(TwistlabError):
    """A prime-valued argument failed the primality check."""


class BothZero(TwistlabError):
    """kronecker(0, 0) is undefined."""


class TrivialExtension(TwistlabError):
    """The squarefree part of d is 1, so Q(sqrt(d)) = Q."""


class SingularCurve(TwistlabError):
    """The Weierstrass equation has vanishing discriminant."""


class BadPrimeSupplied(TwistlabError):
    """A reduction bound was requested at an even or bad prime."""


class PointNotOnCurve(TwistlabError):
    """The supplied point does not satisfy the curve equation."""


class CurveParseError(TwistlabError):
    """A curve literal or corpus row could not be parsed."""


class Violation(TwistlabError):
    """A verdict with true hypotheses and a false conclusion.

    Every checked statement is a proven theorem, so this always signals an
    implementation bug; the offending verdicts ride along as evidence.
    """

    def __init__(self, message: str, verdicts=()):
        super().__init__(message)
        self.verdicts = tuple(verdicts)
