"""twistlab: quadratic twists and torsion growth of rational elliptic curves.

Exact computation of Weierstrass invariants, minimal models, Tate's
algorithm, rational torsion, and torsion over quadratic fields, plus
mechanical verification of the odd-order twist-torsion theorems.
"""

from .arith import (
    PrimeFactorization,
    SquarefreeDecomposition,
    factorize,
    is_prime,
    kronecker,
    squarefree_part,
    valuation,
)
from .corpus import CorpusEntry, fixture_corpus, load_corpus
from .curve import (
    CurveInvariants,
    ModelTransformation,
    WeierstrassCurve,
    invariants,
    is_isomorphic_over_Q,
    minimal_model,
    parse_curve,
    quadratic_twist,
    short_model,
)
from .errors import (
    BadPrimeSupplied,
    BothZero,
    CurveParseError,
    FactorizationLimitExceeded,
    NotPrime,
    PointNotOnCurve,
    SingularCurve,
    TrivialExtension,
    TwistlabError,
    Violation,
    ZeroInput,
)
from .groups import AbelianGroup
from .localdata import (
    KodairaType,
    ReductionClass,
    ReductionData,
    bad_primes,
    conductor,
    reduction_summary,
    tamagawa_product,
    tate_algorithm,
)
from .polys import Poly, monic_quadratic_factors, rational_roots
from .quadfield import (
    HeegnerReport,
    QuadElement,
    QuadraticField,
    Splitting,
    element,
    heegner_check,
    heegner_hypothesis,
    is_square_in_field,
    make_field,
    splitting,
)
from .quadtorsion import (
    GrowthReport,
    direct_ell_torsion_over_L,
    growth_report,
    odd_torsion_over_L,
    two_torsion_over_L,
)
from .sweep import SweepConfig, run_sweep, squarefree_range
from .theorems import (
    TheoremId,
    TheoremVerdict,
    check_growth_power_of_2,
    check_heegner_corollary,
    check_local_twist_corollary,
    check_ramified_primes_bad,
    check_twist_no_large_torsion,
    run_all,
)
from .torsion import (
    TorsionGroup,
    TorsionPoint,
    division_polynomial,
    point_order,
    torsion_bound_via_reduction,
    torsion_subgroup,
)

__version__ = "0.1.0"
