"""Uniform front-end over the four estimation methods.

Every method consumes a :class:`~quantmeansd.summaries.QuantileSummary`
and produces an :class:`EstimateResult` carrying (mean, sd) plus the
method's own diagnostics, so the simulation harness, the pooling engine,
and the CLI can treat them interchangeably.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abc import AbcConfig, abc_estimate
from .bc import DEFAULT_MC_DRAWS, bc_estimate
from .dists import FamilyParams
from .exceptions import DomainError
from .formulas import luo_mean, wan_sd
from .qe import qe_estimate
from .summaries import QuantileSummary, ShiftRecord, shift_positive

__all__ = ["METHODS", "EstimateResult", "estimate_summary", "DEFAULT_SEED"]

#: Supported method names, in canonical order.
METHODS = ("luo_wan", "qe", "bc", "abc")
DEFAULT_SEED = 1729


@dataclass(frozen=True)
class EstimateResult:
    """A method's (mean, sd) estimate plus its diagnostics.

    Diagnostic fields are populated only where meaningful: the selected
    family and objective for the quantile-matching fit, the power and
    transformed-scale parameters for the power-transform method, the
    posterior probability for the rejection sampler.
    """

    method: str
    mean: float
    sd: float
    shift: ShiftRecord
    selected: FamilyParams | None = None
    objective: float | None = None
    lam: float | None = None
    posterior_prob: float | None = None


def estimate_summary(
    summary: QuantileSummary,
    method: str,
    shift_c: float = 0.5,
    seed: int = DEFAULT_SEED,
    mc_draws: int = DEFAULT_MC_DRAWS,
    abc_config: AbcConfig | None = None,
) -> EstimateResult:
    """Run one method on one summary under the shared shift protocol.

    The positivity shift is applied inside each estimator; for the
    closed-form method it is applied here so that all four methods see
    identical inputs (it cancels exactly for a location/scale-equivariant
    formula pair).
    """
    if method == "luo_wan":
        shifted, shift = shift_positive(summary, shift_c)
        return EstimateResult(
            method, luo_mean(shifted) - shift.c, wan_sd(shifted), shift
        )
    if method == "qe":
        r = qe_estimate(summary, shift_c=shift_c)
        return EstimateResult(
            method, r.mean, r.sd, r.shift, selected=r.selected, objective=r.objective
        )
    if method == "bc":
        r = bc_estimate(summary, mc_draws=mc_draws, seed=seed, shift_c=shift_c)
        return EstimateResult(method, r.mean, r.sd, r.shift, lam=r.lam)
    if method == "abc":
        config = abc_config or AbcConfig(seed=seed)
        r = abc_estimate(summary, config, shift_c=shift_c)
        return EstimateResult(
            method,
            r.mean,
            r.sd,
            r.shift,
            selected=r.selected_params,
            posterior_prob=r.posterior_prob,
        )
    raise DomainError(f"unknown method {method!r}; expected one of {METHODS}")
