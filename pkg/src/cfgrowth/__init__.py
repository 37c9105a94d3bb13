"""cfgrowth: exact-arithmetic toolkit for continued-fraction growth statistics.

Encloses the growth ratios R_n (quotient growth vs approximation-error
decay) and S_n (denominator growth vs error decay) in certified rational
intervals, constructs expansions realizing any prescribed limit, classifies
the associated zero-infinity Hausdorff-measure series, evaluates the
closed-form dimension records, and checks the almost-everywhere limits by
seeded Monte-Carlo on exact dyadic samples.
"""

from .boxdim import (
    CAVEAT,
    BoxCount,
    PointCloud,
    SlopeFit,
    box_counts,
    point_cloud,
    slope_fit,
    uniform_cloud,
)
from .cfcore import (
    CFExpansion,
    Convergent,
    ConvergentRecurrence,
    ForcedConvergentCheck,
    convergents,
    cylinder_interval,
    error_bounds,
    evaluate,
    expand_rational,
    is_forced_convergent,
    theta_bounds,
)
from .construct import (
    EVERY_STEP,
    SPARSE,
    ConstructionPlan,
    construct_r_extreme,
    construct_r_target,
    construct_s_target,
    growth_exponent,
)
from .errors import BudgetError, DomainError, InvariantError, ScaleError
from .growth import (
    BURN_IN,
    GapCheck,
    GrowthRecord,
    GrowthTrace,
    exceedance_count,
    gap_check,
    r_ratio,
    s_ratio,
    trace,
)
from .intervals import RationalInterval
from .jarnik import (
    DimensionVerdict,
    JarnikVerdict,
    MeasureClass,
    RateSpec,
    critical_exponent,
    dim_r,
    dim_s,
    legendre_threshold,
    measure_verdict,
    partial_sum,
    rate_value,
)
from .sampler import (
    LEVY_ERROR_RATE,
    CertifiedSample,
    MonteCarloResult,
    SampleBudget,
    TrialStats,
    monte_carlo,
    sample_x,
    trial_stats,
)

__version__ = "0.1.0"

__all__ = [
    "BURN_IN",
    "BoxCount",
    "BudgetError",
    "CAVEAT",
    "CFExpansion",
    "CertifiedSample",
    "ConstructionPlan",
    "Convergent",
    "ConvergentRecurrence",
    "DimensionVerdict",
    "DomainError",
    "EVERY_STEP",
    "ForcedConvergentCheck",
    "GapCheck",
    "GrowthRecord",
    "GrowthTrace",
    "InvariantError",
    "JarnikVerdict",
    "LEVY_ERROR_RATE",
    "MeasureClass",
    "MonteCarloResult",
    "PointCloud",
    "RateSpec",
    "RationalInterval",
    "SPARSE",
    "SampleBudget",
    "ScaleError",
    "SlopeFit",
    "TrialStats",
    "box_counts",
    "convergents",
    "construct_r_extreme",
    "construct_r_target",
    "construct_s_target",
    "critical_exponent",
    "cylinder_interval",
    "dim_r",
    "dim_s",
    "error_bounds",
    "evaluate",
    "exceedance_count",
    "expand_rational",
    "growth_exponent",
    "is_forced_convergent",
    "legendre_threshold",
    "gap_check",
    "measure_verdict",
    "monte_carlo",
    "partial_sum",
    "point_cloud",
    "r_ratio",
    "rate_value",
    "s_ratio",
    "sample_x",
    "slope_fit",
    "theta_bounds",
    "trace",
    "trial_stats",
    "uniform_cloud",
]
