"""Rejection-sampling estimator via approximate Bayesian computation.

Parameter vectors are drawn uniformly from each candidate family's
constraint box, pseudo summary data are simulated from each draw at the
study's sample size, and the draws whose pseudo summaries land closest
to the observed one are accepted. The family with the most acceptances
wins model selection, and its accepted parameters' mean supplies the
reported moments.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dists import CANDIDATE_FAMILIES, Family, FamilyParams, moments, sample_matrix
from .exceptions import DomainError, EstimationError, FitInfeasibleError
from .qe import candidate_param_boxes
from .summaries import (
    QuantileSummary,
    Scenario,
    ShiftRecord,
    require_valid,
    scenario_sample_quantiles,
    shift_positive,
)

__all__ = ["AbcConfig", "AbcResult", "abc_distance", "abc_estimate"]

DEFAULT_SEED = 1729
# block size (in matrix elements) for vectorized pseudo-data simulation
_CHUNK_ELEMS = 1 << 23


@dataclass(frozen=True)
class AbcConfig:
    """Tuning knobs for the rejection sampler.

    ``n_iter`` prior draws are taken per candidate family and the
    ``accept_fraction`` smallest distances of the pooled draws are
    accepted, so keep ``accept_fraction * n_iter * len(candidates)``
    comfortably above 100 for stable posterior summaries; production
    runs use n_iter >= 10^4.
    """

    n_iter: int = 50_000
    accept_fraction: float = 0.001
    seed: int = DEFAULT_SEED
    candidates: tuple[Family, ...] = CANDIDATE_FAMILIES

    def __post_init__(self):
        if self.n_iter < 1:
            raise DomainError("n_iter must be >= 1")
        if not 0.0 < self.accept_fraction < 1.0:
            raise DomainError("accept_fraction must lie in (0, 1)")
        if not self.candidates:
            raise DomainError("need at least one candidate family")


@dataclass(frozen=True)
class AbcResult:
    """Winning family, its posterior-mean parameters, and diagnostics."""

    mean: float
    sd: float
    selected: Family
    selected_params: FamilyParams
    posterior_prob: float
    accepted_counts: dict[Family, int] = field(default_factory=dict)
    shift: ShiftRecord = ShiftRecord(False, 0.0)


def _scale_proxy(summary: QuantileSummary) -> float:
    if summary.scenario is Scenario.S2:
        scale = summary.q3 - summary.q1
    else:
        scale = summary.q_max - summary.q_min
    if scale <= 0:
        raise DomainError("degenerate summary: zero quantile spread")
    return scale


def abc_distance(observed: QuantileSummary, pseudo: QuantileSummary) -> float:
    """Scale-free Euclidean distance between two scenario quantile vectors.

    Each coordinate is divided by the observed summary's spread proxy
    (range in S1/S3, IQR in S2), making acceptance thresholds
    comparable across studies measured on different scales.
    """
    if observed.scenario is not pseudo.scenario:
        raise ValueError("summaries must share a scenario")
    if observed.n != pseudo.n:
        raise ValueError("summaries must share the sample size")
    d = (pseudo.scenario_values() - observed.scenario_values()) / _scale_proxy(observed)
    return float(np.sqrt(np.dot(d, d)))


def _family_distances(
    family: Family,
    boxes: list[tuple[float, float]],
    obs_vec: np.ndarray,
    scale: float,
    scenario: Scenario,
    n: int,
    n_iter: int,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray, np.ndarray | None]:
    theta1 = rng.uniform(boxes[0][0], boxes[0][1], n_iter)
    theta2 = rng.uniform(boxes[1][0], boxes[1][1], n_iter) if len(boxes) > 1 else None
    dist = np.empty(n_iter)
    rows_per_chunk = max(1, _CHUNK_ELEMS // n)
    for start in range(0, n_iter, rows_per_chunk):
        end = min(start + rows_per_chunk, n_iter)
        t2 = theta2[start:end] if theta2 is not None else None
        pseudo = sample_matrix(family, theta1[start:end], t2, n, rng)
        pq = scenario_sample_quantiles(pseudo, scenario)
        delta = (pq - obs_vec) / scale
        dist[start:end] = np.sqrt(np.sum(delta * delta, axis=1))
    return dist, theta1, theta2


def abc_estimate(
    summary: QuantileSummary, config: AbcConfig | None = None, shift_c: float = 0.5
) -> AbcResult:
    """Run the rejection sampler and report the winning family's moments.

    Candidates whose prior box cannot be formed (the log-normal when the
    summary is not strictly positive) contribute no draws. Acceptance is
    pooled across families: the ``accept_fraction`` smallest of all
    simulated distances are kept, the family with the most accepted
    draws is selected, and the coordinate-wise mean of its accepted
    parameters is plugged into the family's closed-form moments.
    Deterministic given the config seed.
    """
    require_valid(summary)
    config = config or AbcConfig()
    shifted, shift = shift_positive(summary, shift_c)
    obs_vec = shifted.scenario_values()
    scale = _scale_proxy(shifted)
    n = int(shifted.n)
    rng = np.random.default_rng(config.seed)

    dists, t1s, t2s, labels = [], [], [], []
    drawn = {}
    for idx, family in enumerate(config.candidates):
        try:
            boxes = candidate_param_boxes(shifted, family)
        except FitInfeasibleError:
            drawn[family] = 0
            continue
        d, t1, t2 = _family_distances(
            family, boxes, obs_vec, scale, shifted.scenario, n, config.n_iter, rng
        )
        dists.append(d)
        t1s.append(t1)
        t2s.append(t2 if t2 is not None else np.full(config.n_iter, np.nan))
        labels.append(np.full(config.n_iter, idx))
        drawn[family] = config.n_iter
    if not dists:
        raise EstimationError("no candidate family admits a prior box")

    dist = np.concatenate(dists)
    theta1 = np.concatenate(t1s)
    theta2 = np.concatenate(t2s)
    label = np.concatenate(labels)
    n_accept = max(1, int(round(config.accept_fraction * dist.size)))
    accepted = np.argsort(dist, kind="stable")[:n_accept]

    counts = np.bincount(label[accepted], minlength=len(config.candidates))
    sel_idx = int(np.argmax(counts))  # ties break by candidate order
    selected = config.candidates[sel_idx]
    sel_rows = accepted[label[accepted] == sel_idx]
    p1 = float(np.mean(theta1[sel_rows]))
    if selected is Family.EXPONENTIAL:
        params = FamilyParams(selected, p1)
    else:
        params = FamilyParams(selected, p1, float(np.mean(theta2[sel_rows])))
    mean, sd = moments(params)
    return AbcResult(
        mean=mean - shift.c,
        sd=sd,
        selected=selected,
        selected_params=params,
        posterior_prob=counts[sel_idx] / n_accept,
        accepted_counts={
            fam: int(counts[i]) for i, fam in enumerate(config.candidates)
        },
        shift=shift,
    )
