"""Numerical laboratory for zeros, critical points, and their potentials.

The package studies monic polynomials with zeros in the closed unit
disk: empirical measures of zeros and critical points, logarithmic
potentials and Stieltjes transforms, harmonic sweeps onto circles,
argument-principle winding counts, and a family of near-extremal
instances for the Sendov problem.
"""

from .contour import (
    AmbiguousCountError,
    RadiusSelection,
    WindingResult,
    select_radius,
    winding_number,
    zero_pole_count,
)
from .families import (
    FamilyParams,
    FamilyReport,
    SecondMomentCheck,
    example_circle,
    example_origin,
    family_critical_points,
    miller_family,
    predicted_zero_shift,
    random_instance,
    second_moment_test,
    verify_family,
)
from .measures import (
    EmpiricalMeasure,
    MeanMatch,
    MomentSummary,
    ZetaDiagnostics,
    check_matching_mean,
    empirical_measure,
    expect_log_distance,
    moment,
    prob_in_region,
    quantitative_zetas,
    summary,
)
from .poly_core import (
    AtomCollisionError,
    Polynomial,
    SendovInstance,
    attach_roots,
    derivative,
    eval_log_abs,
    evaluate,
    from_roots,
    from_roots_batch,
    normalize_sendov,
)
from .potential import (
    CircleDensity,
    ContourTooCloseError,
    IdentityReport,
    balayage,
    circle_fourier_coeff,
    integrated_log_derivative,
    log_potential,
    poisson_kernel,
    stieltjes,
    stieltjes_derivative,
    verify_basic_identities,
)
from .rootfind import (
    DerivativeVanishes,
    RootSet,
    cluster_multiplicities,
    find_roots,
    find_roots_batch,
    refine_root,
)
from .sendov_check import (
    DegotReport,
    DegotRow,
    Region,
    SendovReport,
    critical_points,
    degot_suite,
    gauss_lucas_check,
    lune_membership,
    sendov_margin,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousCountError",
    "AtomCollisionError",
    "CircleDensity",
    "ContourTooCloseError",
    "DegotReport",
    "DegotRow",
    "DerivativeVanishes",
    "EmpiricalMeasure",
    "FamilyParams",
    "FamilyReport",
    "IdentityReport",
    "MeanMatch",
    "MomentSummary",
    "Polynomial",
    "RadiusSelection",
    "Region",
    "RootSet",
    "SecondMomentCheck",
    "SendovInstance",
    "SendovReport",
    "WindingResult",
    "ZetaDiagnostics",
    "__version__",
    "attach_roots",
    "balayage",
    "check_matching_mean",
    "circle_fourier_coeff",
    "cluster_multiplicities",
    "critical_points",
    "degot_suite",
    "derivative",
    "empirical_measure",
    "eval_log_abs",
    "evaluate",
    "example_circle",
    "example_origin",
    "expect_log_distance",
    "family_critical_points",
    "find_roots",
    "find_roots_batch",
    "from_roots",
    "from_roots_batch",
    "gauss_lucas_check",
    "integrated_log_derivative",
    "log_potential",
    "lune_membership",
    "miller_family",
    "moment",
    "normalize_sendov",
    "poisson_kernel",
    "predicted_zero_shift",
    "prob_in_region",
    "quantitative_zetas",
    "random_instance",
    "refine_root",
    "second_moment_test",
    "select_radius",
    "sendov_margin",
    "stieltjes",
    "stieltjes_derivative",
    "summary",
    "verify_basic_identities",
    "verify_family",
    "zero_pole_count",
]
