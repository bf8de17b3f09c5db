"""Reported quantile sets, their validation, and the positivity shifts.

Three reporting scenarios are supported: S1 = {min, median, max, n},
S2 = {Q1, median, Q3, n}, and S3 = all five quantiles plus n. Every
estimator in the package consumes the :class:`QuantileSummary` defined
here, and the two shift protocols implemented here are the shared
preprocessing for data containing non-positive values.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .exceptions import ValidationError

__all__ = [
    "Scenario",
    "QuantileSummary",
    "ShiftRecord",
    "validate",
    "require_valid",
    "shift_positive",
    "shift_to_half",
    "as_scenario",
    "summary_from_sample",
    "scenario_sample_quantiles",
    "read_summaries_csv",
    "SUMMARY_CSV_FIELDS",
]


class Scenario(str, Enum):
    """Which quantile set a study reported."""

    S1 = "S1"
    S2 = "S2"
    S3 = "S3"

    @classmethod
    def parse(cls, value) -> "Scenario":
        if isinstance(value, cls):
            return value
        return cls(str(value).upper())


_FIELDS_BY_SCENARIO = {
    Scenario.S1: ("q_min", "q2", "q_max"),
    Scenario.S2: ("q1", "q2", "q3"),
    Scenario.S3: ("q_min", "q1", "q2", "q3", "q_max"),
}
_MIN_N = {Scenario.S1: 3, Scenario.S2: 3, Scenario.S3: 5}
_ALL_QUANTILE_FIELDS = ("q_min", "q1", "q2", "q3", "q_max")


@dataclass(frozen=True)
class QuantileSummary:
    """One study's reported quantiles, tagged with scenario and size.

    Fields not belonging to the scenario are left as None. Construction
    is lenient; call :func:`validate` (or rely on the estimators, which
    do) to check the scenario's invariants.
    """

    scenario: Scenario
    n: int
    q2: float
    q_min: float | None = None
    q1: float | None = None
    q3: float | None = None
    q_max: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "scenario", Scenario.parse(self.scenario))

    def present_fields(self) -> tuple[str, ...]:
        return tuple(f for f in _ALL_QUANTILE_FIELDS if getattr(self, f) is not None)

    def scenario_values(self) -> np.ndarray:
        """The scenario's quantiles in ascending probability order."""
        return np.array([getattr(self, f) for f in _FIELDS_BY_SCENARIO[self.scenario]])

    def lowest(self) -> float:
        """The scenario's lowest reported quantile (q_min, or q1 in S2)."""
        return self.q1 if self.scenario is Scenario.S2 else self.q_min


@dataclass(frozen=True)
class ShiftRecord:
    """Whether an additive positivity shift was applied, and its size."""

    applied: bool
    c: float = 0.0


NO_SHIFT = ShiftRecord(False, 0.0)


def validate(summary: QuantileSummary) -> list[str]:
    """Return every violated invariant; an empty list means valid.

    Checks field presence for the scenario, ascending order of the
    present quantiles (ties allowed), and the minimum sample size
    (5 for S3, 3 otherwise). Reports rather than raises.
    """
    violations = []
    scen = summary.scenario
    required = _FIELDS_BY_SCENARIO[scen]
    for f in required:
        if getattr(summary, f) is None:
            violations.append(f"{scen.value} requires {f}")
    for f in _ALL_QUANTILE_FIELDS:
        if f not in required and getattr(summary, f) is not None:
            violations.append(f"{f} is not part of {scen.value}")
    present = [getattr(summary, f) for f in required if getattr(summary, f) is not None]
    if any(not np.isfinite(v) for v in present):
        violations.append("quantiles must be finite")
    elif any(a > b for a, b in zip(present, present[1:])):
        violations.append("quantiles must be non-decreasing")
    if int(summary.n) != summary.n or summary.n < _MIN_N[scen]:
        violations.append(f"{scen.value} requires integer n >= {_MIN_N[scen]}")
    return violations


def require_valid(summary: QuantileSummary) -> None:
    """Raise :class:`ValidationError` listing any violated invariants."""
    violations = validate(summary)
    if violations:
        raise ValidationError("; ".join(violations))


def _shift_by(summary: QuantileSummary, c: float) -> QuantileSummary:
    updates = {f: getattr(summary, f) + c for f in summary.present_fields()}
    return replace(summary, **updates)


def shift_positive(
    summary: QuantileSummary, c: float = 0.5
) -> tuple[QuantileSummary, ShiftRecord]:
    """Add ``c`` to every present quantile when the lowest one is <= 0.

    Leaves already-positive summaries unchanged. After estimating, the
    caller subtracts the recorded ``c`` from the estimated mean only;
    the SD is unaffected by a location shift.
    """
    if c <= 0:
        raise ValidationError(f"shift constant must be > 0, got {c}")
    lowest = summary.lowest()
    if lowest is None or lowest > 0:
        return summary, NO_SHIFT
    return _shift_by(summary, c), ShiftRecord(True, c)


def shift_to_half(summary: QuantileSummary) -> tuple[QuantileSummary, ShiftRecord]:
    """Shift all present quantiles so the lowest one equals 0.5.

    Used for data that may contain negative values (normally generated
    simulation samples). No-op when the lowest quantile is already at
    least 0.5. The caller subtracts the recorded shift from the
    estimated mean only.
    """
    lowest = summary.lowest()
    if lowest is None or lowest >= 0.5:
        return summary, NO_SHIFT
    c = 0.5 - lowest
    return _shift_by(summary, c), ShiftRecord(True, c)


def as_scenario(summary: QuantileSummary, scenario) -> QuantileSummary:
    """Project a summary onto a (sub-)scenario, dropping extra fields.

    Typically used to view an S3 five-number summary as the S1 or S2
    subset a study might have reported instead.
    """
    scenario = Scenario.parse(scenario)
    required = _FIELDS_BY_SCENARIO[scenario]
    missing = [f for f in required if getattr(summary, f) is None]
    if missing:
        raise ValidationError(f"cannot view as {scenario.value}: missing {missing}")
    kwargs = {f: getattr(summary, f) for f in required}
    return QuantileSummary(scenario=scenario, n=summary.n, **kwargs)


def scenario_sample_quantiles(
    data: np.ndarray, scenario, method: str = "linear"
) -> np.ndarray:
    """Scenario quantile vectors of sample rows, shape (rows, 3 or 5).

    Extremes are the exact sample min/max; the quartiles and median
    interpolate order statistics at h = (n-1)p + 1, numpy's ``linear``
    method. The interpolation rule is a named, swappable policy because
    quartiles differ across conventions at small n.
    """
    scenario = Scenario.parse(scenario)
    x = np.atleast_2d(np.asarray(data, dtype=float))
    if x.shape[1] == 0:
        raise ValidationError("empty sample")
    if scenario is Scenario.S1:
        q2 = np.quantile(x, 0.5, axis=1, method=method)
        return np.column_stack([x.min(axis=1), q2, x.max(axis=1)])
    quartiles = np.quantile(x, [0.25, 0.5, 0.75], axis=1, method=method).T
    if scenario is Scenario.S2:
        return quartiles
    return np.column_stack([x.min(axis=1), quartiles, x.max(axis=1)])


def summary_from_sample(data, scenario, method: str = "linear") -> QuantileSummary:
    """Compute the scenario's reported summary from a raw sample."""
    scenario = Scenario.parse(scenario)
    data = np.asarray(data, dtype=float)
    if data.ndim != 1:
        raise ValidationError("data must be one-dimensional")
    n = data.size
    if n < _MIN_N[scenario]:
        raise ValidationError(f"{scenario.value} needs at least {_MIN_N[scenario]} values")
    q = scenario_sample_quantiles(data, scenario, method=method)[0]
    if scenario is Scenario.S1:
        return QuantileSummary(scenario, n, q_min=q[0], q2=q[1], q_max=q[2])
    if scenario is Scenario.S2:
        return QuantileSummary(scenario, n, q1=q[0], q2=q[1], q3=q[2])
    return QuantileSummary(scenario, n, q_min=q[0], q1=q[1], q2=q[2], q3=q[3], q_max=q[4])


#: Column order of the study-summary CSV interchange format.
SUMMARY_CSV_FIELDS = ("study_id", "n", "q_min", "q1", "q2", "q3", "q_max")


def _infer_scenario(row: dict) -> Scenario:
    has = {f for f in _ALL_QUANTILE_FIELDS if row.get(f) not in (None, "")}
    if has == {"q_min", "q2", "q_max"}:
        return Scenario.S1
    if has == {"q1", "q2", "q3"}:
        return Scenario.S2
    if has == set(_ALL_QUANTILE_FIELDS):
        return Scenario.S3
    raise ValidationError(f"cannot infer scenario from fields {sorted(has)}")


def read_summaries_csv(path) -> list[tuple[str, QuantileSummary]]:
    """Read (study_id, summary) pairs from the interchange CSV.

    Expected header: ``study_id, n, q_min, q1, q2, q3, q_max`` with empty
    cells for fields the study's scenario does not include.
    """
    out = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        missing = [f for f in SUMMARY_CSV_FIELDS if f not in (reader.fieldnames or [])]
        if missing:
            raise ValidationError(f"summary CSV is missing columns {missing}")
        for i, row in enumerate(reader):
            scen = _infer_scenario(row)
            try:
                n = int(row["n"])
            except (TypeError, ValueError):
                raise ValidationError(f"row {i}: bad sample size {row.get('n')!r}")
            kwargs = {
                f: float(row[f])
                for f in _FIELDS_BY_SCENARIO[scen]
                if row.get(f) not in (None, "")
            }
            out.append((row["study_id"], QuantileSummary(scenario=scen, n=n, **kwargs)))
    return out
