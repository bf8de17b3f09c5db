"""Quantile-matching estimator.

Each candidate family is fitted by minimizing the summed squared distance
between the reported quantiles and the family's theoretical quantiles at
the scenario's probability points (1/n and 1 - 1/n stand in for the
extremes). The best-fitting converged family supplies the mean and SD
estimates through its closed-form moments.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .dists import CANDIDATE_FAMILIES, Family, FamilyParams, moments, mom_fit, quantile
from .exceptions import DomainError, EstimationError, FitInfeasibleError
from .formulas import luo_mean, wan_sd
from .summaries import (
    QuantileSummary,
    Scenario,
    ShiftRecord,
    require_valid,
    shift_positive,
)

__all__ = [
    "QeFit",
    "QeResult",
    "scenario_probs",
    "candidate_param_boxes",
    "qe_objective",
    "qe_fit",
    "qe_estimate",
]

_EPS = float(np.finfo(float).eps)
#: Relative objective-decrease threshold: 1e7 times machine epsilon, the
#: conventional "moderate accuracy" stopping factor for L-BFGS-B.
CONVERGENCE_FTOL = 1e7 * _EPS
#: Open parameter intervals are implemented as closed boxes shrunk inward.
_BOX_SHRINK = 1e-9


@dataclass(frozen=True)
class QeFit:
    """One candidate family's fit: parameters, objective value, status.

    ``params`` is None when method-of-moments initialization was
    infeasible for this family; ``converged`` is False both then and on
    optimizer failure, and such candidates are excluded from selection.
    """

    family: Family
    params: FamilyParams | None
    objective: float
    converged: bool


@dataclass(frozen=True)
class QeResult:
    """Selected-family moments plus per-candidate diagnostics."""

    mean: float
    sd: float
    selected: FamilyParams
    objective: float
    fits: tuple[QeFit, ...]
    shift: ShiftRecord


def scenario_probs(scenario, n: int) -> np.ndarray:
    """Probability points matched by the objective for this scenario."""
    scenario = Scenario.parse(scenario)
    if scenario is Scenario.S1:
        return np.array([1.0 / n, 0.5, 1.0 - 1.0 / n])
    if scenario is Scenario.S2:
        return np.array([0.25, 0.5, 0.75])
    return np.array([1.0 / n, 0.25, 0.5, 0.75, 1.0 - 1.0 / n])


def qe_objective(summary: QuantileSummary, params: FamilyParams) -> float:
    """Summed squared deviation between reported and theoretical quantiles.

    A reported quantile outside the family's support is not an error;
    the corresponding deviation simply grows.
    """
    require_valid(summary)
    p = scenario_probs(summary.scenario, summary.n)
    with np.errstate(all="ignore"):
        theo = quantile(params, p)
    d = np.asarray(theo) - summary.scenario_values()
    return float(np.dot(d, d))


def candidate_param_boxes(
    summary: QuantileSummary, family: Family
) -> list[tuple[float, float]]:
    """Per-family parameter constraint boxes, shared with the ABC priors.

    The location bounds for the normal and log-normal come from the
    reported quantiles of the summary being fitted (extremes in S1,
    quartiles otherwise); the shape/rate boxes are fixed.
    """
    scen = summary.scenario
    if scen is Scenario.S1:
        lo_q, hi_q = summary.q_min, summary.q_max
    else:
        lo_q, hi_q = summary.q1, summary.q3
    if family is Family.NORMAL:
        return [(lo_q, hi_q), (1e-3, 50.0)]
    if family is Family.LOG_NORMAL:
        if lo_q <= 0:
            raise FitInfeasibleError("log-normal box needs strictly positive quantiles")
        return [(float(np.log(lo_q)), float(np.log(hi_q))), (1e-3, 50.0)]
    if family is Family.GAMMA:
        return [(1e-3, 100.0), (1e-3, 100.0)]
    if family is Family.BETA:
        return [(1e-3, 40.0), (1e-3, 40.0)]
    if family is Family.WEIBULL:
        return [(1e-3, 100.0), (1e-3, 100.0)]
    # rate box for the exponential, mirroring the fixed shape/rate boxes
    return [(1e-3, 100.0)]


def _param_bounds(summary: QuantileSummary, family: Family) -> list[tuple[float, float]]:
    if family not in CANDIDATE_FAMILIES:
        raise DomainError(f"{family.value} is not a quantile-matching candidate")
    raw = candidate_param_boxes(summary, family)
    out = [(lo + _BOX_SHRINK, hi - _BOX_SHRINK) for lo, hi in raw]
    if any(lo >= hi for lo, hi in out):
        raise FitInfeasibleError(f"{family.value} parameter box is empty")
    return out


def qe_fit(summary: QuantileSummary, family: Family) -> QeFit:
    """Fit one candidate family by box-constrained quasi-Newton descent.

    The start point is the method-of-moments inverse of the Luo/Wan
    preliminary estimates, clipped into the family's box. Gradients are
    central differences with step 1e-6 * max(1, |theta|); if the
    quasi-Newton run fails, a bounded Nelder-Mead restart is attempted
    before declaring the candidate non-converged.
    """
    require_valid(summary)
    try:
        bounds = _param_bounds(summary, family)
        init = mom_fit(family, luo_mean(summary), wan_sd(summary))
    except FitInfeasibleError:
        return QeFit(family, None, np.inf, False)
    lo = np.array([b[0] for b in bounds])
    hi = np.array([b[1] for b in bounds])
    x0 = np.clip([init.theta1, init.theta2], lo, hi)

    p = scenario_probs(summary.scenario, summary.n)
    target = summary.scenario_values()
    fam = family

    def objective(t):
        with np.errstate(all="ignore"):
            theo = quantile(FamilyParams(fam, t[0], t[1]), p)
        d = np.asarray(theo) - target
        val = float(np.dot(d, d))
        return val if np.isfinite(val) else 1e300

    def gradient(t):
        g = np.empty(2)
        for i in range(2):
            h = 1e-6 * max(1.0, abs(t[i]))
            up = t.copy()
            dn = t.copy()
            up[i] = min(t[i] + h, hi[i])
            dn[i] = max(t[i] - h, lo[i])
            g[i] = (objective(up) - objective(dn)) / (up[i] - dn[i])
        return g

    res = minimize(
        objective,
        x0,
        jac=gradient,
        method="L-BFGS-B",
        bounds=bounds,
        options={"ftol": CONVERGENCE_FTOL, "maxiter": 500},
    )
    if not (res.success and np.isfinite(res.fun)):
        res = minimize(
            objective,
            x0,
            method="Nelder-Mead",
            bounds=bounds,
            options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 2000},
        )
        if not (res.success and np.isfinite(res.fun)):
            return QeFit(family, None, np.inf, False)
    params = FamilyParams(family, float(res.x[0]), float(res.x[1]))
    return QeFit(family, params, float(res.fun), True)


def qe_estimate(summary: QuantileSummary, shift_c: float = 0.5) -> QeResult:
    """Fit all candidates, select the smallest objective, report moments.

    The positivity shift (default +0.5 when the lowest reported quantile
    is <= 0) is applied before fitting and subtracted from the estimated
    mean afterwards. Ties in the objective break by the fixed candidate
    order normal, log-normal, gamma, beta, Weibull.
    """
    require_valid(summary)
    shifted, shift = shift_positive(summary, shift_c)
    fits = tuple(qe_fit(shifted, fam) for fam in CANDIDATE_FAMILIES)
    best = None
    for fit in fits:
        if fit.converged and (best is None or fit.objective < best.objective):
            best = fit
    if best is None:
        raise EstimationError("no candidate family converged")
    mean, sd = moments(best.params)
    return QeResult(
        mean=mean - shift.c,
        sd=sd,
        selected=best.params,
        objective=best.objective,
        fits=fits,
        shift=shift,
    )
