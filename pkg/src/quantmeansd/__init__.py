"""Estimate a study's sample mean and SD from reported quantile summaries.

Given a study that reports its median together with the min/max (S1),
the quartiles (S2), or all five (S3) plus the sample size, this package
estimates the sample mean and standard deviation by four routes: the
closed-form normal-theory formulas (Luo/Wan), least-squares quantile
matching over candidate parametric families, a symmetrizing power
transform with truncated-normal back-transformation, and rejection-
sampling approximate Bayesian computation. A Monte Carlo harness
benchmarks the methods' relative errors, and a random-effects engine
pools derived study means with REML heterogeneity.
"""

from .abc import AbcConfig, AbcResult, abc_distance, abc_estimate
from .bc import (
    BcResult,
    bc_estimate,
    box_cox,
    find_lambda,
    inv_box_cox,
    truncated_moments_integral,
)
from .datasets import table_s1
from .dists import (
    CANDIDATE_FAMILIES,
    Family,
    FamilyParams,
    mom_fit,
    moments,
    normal_quantile,
    quantile,
    sample,
)
from .exceptions import (
    DomainError,
    EstimationError,
    FitInfeasibleError,
    ValidationError,
)
from .formulas import luo_mean, wan_sd
from .meta import (
    MetaResult,
    StudyEffect,
    bowley,
    derive_and_pool,
    derive_effects,
    pool,
    reml_tau2,
)
from .methods import METHODS, EstimateResult, estimate_summary
from .qe import QeFit, QeResult, qe_estimate, qe_fit, qe_objective
from .sim import (
    AreRecord,
    SimCell,
    relative_error,
    run_cell,
    run_grid,
    sample_summary,
)
from .summaries import (
    QuantileSummary,
    Scenario,
    ShiftRecord,
    as_scenario,
    shift_positive,
    shift_to_half,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "AbcConfig",
    "AbcResult",
    "AreRecord",
    "BcResult",
    "CANDIDATE_FAMILIES",
    "DomainError",
    "EstimateResult",
    "EstimationError",
    "Family",
    "FamilyParams",
    "FitInfeasibleError",
    "METHODS",
    "MetaResult",
    "QeFit",
    "QeResult",
    "QuantileSummary",
    "Scenario",
    "ShiftRecord",
    "SimCell",
    "StudyEffect",
    "ValidationError",
    "abc_distance",
    "abc_estimate",
    "as_scenario",
    "bc_estimate",
    "bowley",
    "box_cox",
    "derive_and_pool",
    "derive_effects",
    "estimate_summary",
    "find_lambda",
    "inv_box_cox",
    "luo_mean",
    "mom_fit",
    "moments",
    "normal_quantile",
    "pool",
    "qe_estimate",
    "qe_fit",
    "qe_objective",
    "quantile",
    "relative_error",
    "reml_tau2",
    "run_cell",
    "run_grid",
    "sample",
    "sample_summary",
    "shift_positive",
    "shift_to_half",
    "table_s1",
    "truncated_moments_integral",
    "validate",
    "wan_sd",
]
