"""Closed-form sample mean (Luo et al.) and SD (Wan et al.) estimators.

Both assume an underlying normal distribution. The mean estimators
optimally weight the median against the mid-range and/or mid-quartile
range; the SD estimators divide the range and/or IQR by the expected
normal order-statistic spread at Blom-style plotting positions.
"""

from __future__ import annotations

from .dists import normal_quantile
from .exceptions import ValidationError
from .summaries import QuantileSummary, Scenario, require_valid

__all__ = ["luo_mean", "wan_sd", "luo_weights"]


def luo_weights(scenario, n: int) -> tuple[float, ...]:
    """Weights of (mid-range, mid-IQR, median) terms; they sum to one.

    S1 returns (w_range, w_median), S2 (w_iqr, w_median), S3 the full
    triple (w_range, w_iqr, w_median).
    """
    scenario = Scenario.parse(scenario)
    if scenario is Scenario.S1:
        w = 4.0 / (4.0 + n**0.75)
        return w, 1.0 - w
    if scenario is Scenario.S2:
        w = 0.7 + 0.39 / n
        return w, 0.3 - 0.39 / n
    w1 = 2.2 / (2.2 + n**0.75)
    w2 = 0.7 - 0.72 / n**0.55
    return w1, w2, 0.3 + 0.72 / n**0.55 - 2.2 / (2.2 + n**0.75)


def luo_mean(summary: QuantileSummary) -> float:
    """Optimally weighted sample-mean estimate from the reported quantiles."""
    require_valid(summary)
    n = summary.n
    scen = summary.scenario
    if scen is Scenario.S1:
        w_range, w_med = luo_weights(scen, n)
        return w_range * (summary.q_min + summary.q_max) / 2.0 + w_med * summary.q2
    if scen is Scenario.S2:
        w_iqr, w_med = luo_weights(scen, n)
        return w_iqr * (summary.q1 + summary.q3) / 2.0 + w_med * summary.q2
    w_range, w_iqr, w_med = luo_weights(scen, n)
    return (
        w_range * (summary.q_min + summary.q_max) / 2.0
        + w_iqr * (summary.q1 + summary.q3) / 2.0
        + w_med * summary.q2
    )


def _range_denom(n: int) -> float:
    return 2.0 * normal_quantile((n - 0.375) / (n + 0.25))


def _iqr_denom(n: int) -> float:
    return 2.0 * normal_quantile((0.75 * n - 0.125) / (n + 0.25))


def wan_sd(summary: QuantileSummary) -> float:
    """Sample-SD estimate from the range and/or IQR of the reported quantiles.

    The S3 estimate is exactly the average of the S1-style range term and
    the S2-style IQR term.
    """
    require_valid(summary)
    n = summary.n
    if n < 2:
        raise ValidationError(f"sd estimation needs n >= 2, got {n}")
    scen = summary.scenario
    if scen is Scenario.S1:
        return (summary.q_max - summary.q_min) / _range_denom(n)
    if scen is Scenario.S2:
        return (summary.q3 - summary.q1) / _iqr_denom(n)
    return (summary.q_max - summary.q_min) / (2.0 * _range_denom(n)) + (
        summary.q3 - summary.q1
    ) / (2.0 * _iqr_denom(n))
