"""Numerical geometry of analytic images of disks.

Estimates set functionals (radius, diameter, n-point diameter, capacity
bracket, area, perimeter) of f(r D) for analytic f on the unit disk,
their normalized growth curves in r with monotonicity and log-convexity
verdicts, sharp inequality checks with equality detection, exact
root-of-unity identities, a hyperbolic-density module, and an
annulus-cover family whose area curve fails log-convexity.
"""

from .analytic import (
    AnnulusCover,
    BoundarySample,
    FunctionSpec,
    Moebius,
    Polynomial,
    PowerSeries,
    derivative,
    evaluate,
    sample_circle,
    scale_spec,
    second_derivative,
    spec_from_json,
    spec_hash,
    spec_to_json,
    taylor_coefficients,
)
from .bounds import (
    InequalityReport,
    check_don,
    check_don_symmetric,
    check_growth,
    check_isoperimetric,
    check_polya_chain,
    check_poukka,
    check_schur,
    disk_functional_estimate,
    normalize_spec,
    report_to_json,
)
from .counterexample import (
    CounterexampleRun,
    area_annulus_cover,
    area_series_annulus,
    check_not_log_convex,
    limit_profile,
    limit_target,
    univalence_threshold,
)
from .errors import (
    ConditioningWarning,
    CriticalPointError,
    DegenerateError,
    DiskGeomError,
    DomainError,
    GridError,
    NormalizationError,
    OptimizationWarning,
    QuadratureError,
    ResourceError,
    UnivalenceError,
    UnsupportedError,
)
from .functionals import (
    FunctionalValue,
    UnivalenceResult,
    area,
    area_univalent_series,
    capacity_bracket,
    circle_image_length,
    diameter,
    disk_n_diameter,
    is_univalent_sampled,
    n_diameter,
    perimeter_univalent,
    radius,
)
from .growth import (
    ConvexVerdict,
    GrowthCurve,
    LimitCheck,
    MonotoneVerdict,
    check_log_convex,
    check_monotone,
    default_grid,
    limit_at_zero,
    phi_curve,
    write_curve_csv,
)
from .hyperbolic import (
    check_density_lower_bound,
    density_disk,
    density_via_cover,
    dist_to_boundary,
    hyp_distance_disk,
    hyperbolic_disk_growth,
)
from .identities import (
    PointTuple,
    fekete_witness_is_roots,
    hadamard_bound_check,
    identity_suite,
    roots_of_unity,
    roots_of_unity_sum,
    second_sum,
    vandermonde_check,
)

__version__ = "0.1.0"

__all__ = [
    "AnnulusCover",
    "BoundarySample",
    "ConditioningWarning",
    "ConvexVerdict",
    "CounterexampleRun",
    "CriticalPointError",
    "DegenerateError",
    "DiskGeomError",
    "DomainError",
    "FunctionSpec",
    "FunctionalValue",
    "GridError",
    "GrowthCurve",
    "InequalityReport",
    "LimitCheck",
    "Moebius",
    "MonotoneVerdict",
    "NormalizationError",
    "OptimizationWarning",
    "PointTuple",
    "Polynomial",
    "PowerSeries",
    "QuadratureError",
    "ResourceError",
    "UnivalenceError",
    "UnivalenceResult",
    "UnsupportedError",
    "area",
    "area_annulus_cover",
    "area_series_annulus",
    "area_univalent_series",
    "capacity_bracket",
    "check_density_lower_bound",
    "check_don",
    "check_don_symmetric",
    "check_growth",
    "check_isoperimetric",
    "check_log_convex",
    "check_monotone",
    "check_not_log_convex",
    "check_polya_chain",
    "check_poukka",
    "check_schur",
    "circle_image_length",
    "default_grid",
    "density_disk",
    "density_via_cover",
    "derivative",
    "diameter",
    "disk_functional_estimate",
    "disk_n_diameter",
    "dist_to_boundary",
    "evaluate",
    "fekete_witness_is_roots",
    "hadamard_bound_check",
    "hyp_distance_disk",
    "hyperbolic_disk_growth",
    "identity_suite",
    "is_univalent_sampled",
    "limit_at_zero",
    "limit_profile",
    "limit_target",
    "n_diameter",
    "normalize_spec",
    "perimeter_univalent",
    "phi_curve",
    "radius",
    "report_to_json",
    "roots_of_unity",
    "roots_of_unity_sum",
    "sample_circle",
    "scale_spec",
    "second_derivative",
    "second_sum",
    "spec_from_json",
    "spec_hash",
    "spec_to_json",
    "taylor_coefficients",
    "univalence_threshold",
    "vandermonde_check",
    "write_curve_csv",
]
