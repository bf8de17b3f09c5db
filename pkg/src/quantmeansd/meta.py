"""Random-effects meta-analysis of study-level means.

Between-study variance is estimated by restricted maximum likelihood
(Fisher scoring with step halving, started from the method-of-moments
value), the pooled mean uses inverse-variance weights with a normal
95% interval, and heterogeneity is summarized by Cochran's Q and the
I-squared share of total variability. Quartile skewness (Bowley's
coefficient) is included for describing the pooled studies.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, replace

import numpy as np

from .abc import AbcConfig
from .bc import DEFAULT_MC_DRAWS
from .dists import normal_quantile
from .exceptions import DomainError, EstimationError
from .methods import DEFAULT_SEED, estimate_summary
from .summaries import QuantileSummary, as_scenario

__all__ = [
    "StudyEffect",
    "MetaResult",
    "reml_tau2",
    "pool",
    "bowley",
    "derive_effects",
    "derive_and_pool",
]

_Z975 = normal_quantile(0.975)


@dataclass(frozen=True)
class StudyEffect:
    """One study's mean estimate with its within-study variance sd^2/n."""

    study_id: str
    mean: float
    sd: float
    n: int

    def __post_init__(self):
        if not (np.isfinite(self.mean) and np.isfinite(self.sd)) or self.sd <= 0:
            raise DomainError(
                f"study {self.study_id!r}: need finite mean and sd > 0"
            )
        if self.n < 1:
            raise DomainError(f"study {self.study_id!r}: need n >= 1")

    @property
    def variance(self) -> float:
        return self.sd**2 / self.n


@dataclass(frozen=True)
class MetaResult:
    """Pooled mean with 95% CI, plus heterogeneity summaries."""

    pooled_mean: float
    ci_low: float
    ci_high: float
    tau2: float
    q_stat: float
    i2: float


def _canonical(effects) -> list[StudyEffect]:
    effects = list(effects)
    if len(effects) < 2:
        raise ValueError("pooling needs at least 2 studies")
    # fixed summation order makes results bit-identical under permutation
    return sorted(effects, key=lambda e: (e.study_id, e.mean, e.sd, e.n))


def _restricted_loglik(tau2, y, v):
    w = 1.0 / (v + tau2)
    mu = np.sum(w * y) / np.sum(w)
    return -0.5 * (
        np.sum(np.log(v + tau2)) + np.log(np.sum(w)) + np.sum(w * (y - mu) ** 2)
    )


def reml_tau2(effects, max_iter: int = 100) -> float:
    """Restricted-maximum-likelihood between-study variance.

    Fisher scoring from the non-negative method-of-moments start,
    halving steps that fail to improve the restricted likelihood;
    converges when the update falls below 1e-10 * max(1, tau2) and is
    floored at zero throughout.
    """
    effects = _canonical(effects)
    y = np.array([e.mean for e in effects])
    v = np.array([e.variance for e in effects])
    k = len(y)

    w = 1.0 / v
    mu_fe = np.sum(w * y) / np.sum(w)
    q = np.sum(w * (y - mu_fe) ** 2)
    c = np.sum(w) - np.sum(w**2) / np.sum(w)
    tau2 = max(0.0, (q - (k - 1)) / c)

    for _ in range(max_iter):
        wi = 1.0 / (v + tau2)
        s = np.sum(wi)
        mu = np.sum(wi * y) / s
        r = y - mu
        score = -0.5 * (s - np.sum(wi**2) / s) + 0.5 * np.sum(wi**2 * r**2)
        info = 0.5 * (
            np.sum(wi**2) - 2.0 * np.sum(wi**3) / s + (np.sum(wi**2) / s) ** 2
        )
        step = score / info
        base_ll = _restricted_loglik(tau2, y, v)
        new = max(0.0, tau2 + step)
        for _ in range(16):
            if _restricted_loglik(new, y, v) >= base_ll or new == tau2:
                break
            step *= 0.5
            new = max(0.0, tau2 + step)
        if abs(new - tau2) <= 1e-10 * max(1.0, new):
            return float(new)
        tau2 = new
    raise EstimationError("restricted-likelihood iteration did not converge")


def pool(effects) -> MetaResult:
    """Random-effects pooled mean, normal 95% CI, Q, and I-squared.

    I-squared uses tau2 against the typical within-study variance
    (Higgins-Thompson form), so it is consistent with the restricted-
    likelihood tau2 rather than re-derived from Q.
    """
    effects = _canonical(effects)
    tau2 = reml_tau2(effects)
    y = np.array([e.mean for e in effects])
    v = np.array([e.variance for e in effects])
    k = len(y)

    w = 1.0 / (v + tau2)
    pooled = float(np.sum(w * y) / np.sum(w))
    se = float(1.0 / np.sqrt(np.sum(w)))

    w_fe = 1.0 / v
    mu_fe = np.sum(w_fe * y) / np.sum(w_fe)
    q_stat = float(np.sum(w_fe * (y - mu_fe) ** 2))
    v_typical = (k - 1) * np.sum(w_fe) / (np.sum(w_fe) ** 2 - np.sum(w_fe**2))
    i2 = 100.0 * tau2 / (tau2 + v_typical) if tau2 > 0 else 0.0

    return MetaResult(
        pooled_mean=pooled,
        ci_low=pooled - _Z975 * se,
        ci_high=pooled + _Z975 * se,
        tau2=float(tau2),
        q_stat=q_stat,
        i2=float(i2),
    )


def bowley(summary: QuantileSummary) -> float:
    """Quartile skewness (Q3 + Q1 - 2*Q2)/(Q3 - Q1), in [-1, 1]."""
    if summary.q1 is None or summary.q3 is None:
        raise DomainError("quartile skewness needs q1 and q3")
    if summary.q3 <= summary.q1:
        raise DomainError("quartile skewness is undefined for q1 = q3")
    return (summary.q3 + summary.q1 - 2.0 * summary.q2) / (summary.q3 - summary.q1)


def _study_seed(base_seed: int, study_id: str) -> int:
    # stable across runs and independent of study order
    digest = hashlib.sha256(study_id.encode()).digest()
    h = int.from_bytes(digest[:8], "big")
    return int(np.random.SeedSequence([base_seed, h]).generate_state(1, np.uint64)[0])


def derive_effects(
    studies,
    method: str,
    scenario,
    shift_c: float = 0.5,
    seed: int = DEFAULT_SEED,
    mc_draws: int = DEFAULT_MC_DRAWS,
    abc_config: AbcConfig | None = None,
) -> list[StudyEffect]:
    """Estimate each study's (mean, sd) under the given scenario view.

    ``studies`` holds (study_id, summary) pairs; each summary is
    projected onto the requested scenario before estimation, and the
    positivity-shift protocol applies per study. Stochastic methods
    derive a per-study seed from (seed, study_id), so the result does
    not depend on study order. A failing study aborts with an error
    naming it.
    """
    effects = []
    for study_id, summary in studies:
        view = as_scenario(summary, scenario)
        study_seed = _study_seed(seed, study_id)
        cfg = None
        if method == "abc":
            base = abc_config or AbcConfig(seed=seed)
            cfg = replace(base, seed=_study_seed(base.seed, study_id))
        try:
            est = estimate_summary(
                view,
                method,
                shift_c=shift_c,
                seed=study_seed,
                mc_draws=mc_draws,
                abc_config=cfg,
            )
        except (ValueError, RuntimeError) as exc:
            raise EstimationError(f"estimation failed for study {study_id!r}: {exc}")
        effects.append(StudyEffect(study_id, est.mean, est.sd, view.n))
    return effects


def derive_and_pool(
    studies,
    method: str,
    scenario,
    shift_c: float = 0.5,
    seed: int = DEFAULT_SEED,
    mc_draws: int = DEFAULT_MC_DRAWS,
    abc_config: AbcConfig | None = None,
) -> MetaResult:
    """Derive per-study effects with one method, then pool them."""
    return pool(
        derive_effects(
            studies,
            method,
            scenario,
            shift_c=shift_c,
            seed=seed,
            mc_draws=mc_draws,
            abc_config=abc_config,
        )
    )
