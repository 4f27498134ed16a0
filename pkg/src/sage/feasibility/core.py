"""Weighted feasibility scoring and categorical verdicts.

Four criteria with fixed default weights: data availability 35%, technical
readiness 25%, logical soundness 25%, resource constraints 15%. The weighted
total maps to a verdict through inclusive-upward thresholds (defaults 7.0
feasible, 4.0 conditionally feasible).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from sage.feasibility.probes import (
    DEFAULT_RUBRIC,
    ResourceProbe,
    ResourceProbeResult,
    Rubric,
)

CRITERIA = ("data_availability", "tech_readiness", "logical_soundness", "resource_constraints")
VERDICTS = ("feasible", "conditionally_feasible", "infeasible")

DEFAULT_THRESHOLDS = (7.0, 4.0)

_WEIGHT_TOL = 1e-12


@dataclass(frozen=True)
class FeasibilityWeights:
    data_availability: float = 0.35
    tech_readiness: float = 0.25
    logical_soundness: float = 0.25
    resource_constraints: float = 0.15

    def __post_init__(self):
        values = self.as_dict().values()
        if any(w < 0 for w in values):
            raise ValueError("feasibility weights must be nonnegative")
        if abs(sum(values) - 1.0) > _WEIGHT_TOL:
            raise ValueError(f"feasibility weights must sum to 1.0, got {sum(values)!r}")

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in CRITERIA}


DEFAULT_WEIGHTS = FeasibilityWeights()


@dataclass(frozen=True)
class SubScore:
    value: float
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if not 0.0 <= self.value <= 10.0:
            raise ValueError(f"sub-score {self.value!r} outside [0, 10]")

    def to_dict(self) -> dict:
        return {"value": self.value, "notes": list(self.notes)}


@dataclass(frozen=True)
class FeasibilityAssessment:
    data_availability: SubScore
    tech_readiness: SubScore
    logical_soundness: SubScore
    resource_constraints: SubScore
    weighted_total: float
    verdict: str
    weights: FeasibilityWeights = DEFAULT_WEIGHTS

    def sub_scores(self) -> dict[str, float]:
        return {name: getattr(self, name).value for name in CRITERIA}

    def to_dict(self) -> dict:
        return {
            **{name: getattr(self, name).to_dict() for name in CRITERIA},
            "weighted_total": self.weighted_total,
            "verdict": self.verdict,
            "weights": self.weights.as_dict(),
        }


def weighted_total(scores: Mapping[str, float] | Sequence[float],
                   weights: FeasibilityWeights = DEFAULT_WEIGHTS) -> float:
    """0.35·data + 0.25·tech + 0.25·logic + 0.15·resource under default weights."""
    if isinstance(scores, Mapping):
        values = [scores[name] for name in CRITERIA]
    else:
        values = list(scores)
        if len(values) != len(CRITERIA):
            raise ValueError(f"expected {len(CRITERIA)} sub-scores, got {len(values)}")
    for v in values:
        if not 0.0 <= v <= 10.0:
            raise ValueError(f"sub-score {v!r} outside [0, 10]")
    w = weights.as_dict()
    return sum(w[name] * value for name, value in zip(CRITERIA, values))


def verdict_of(total: float, thresholds: tuple[float, float] = DEFAULT_THRESHOLDS) -> str:
    """Inclusive upward: total at a threshold earns the better verdict."""
    t_feasible, t_conditional = thresholds
    if not 0.0 <= t_conditional < t_feasible <= 10.0:
        raise ValueError(f"thresholds must satisfy 0 <= conditional < feasible <= 10, got {thresholds}")
    if total >= t_feasible:
        return "feasible"
    if total >= t_conditional:
        return "conditionally_feasible"
    return "infeasible"


def assessment_from_scores(scores: Mapping[str, float] | Sequence[float],
                           weights: FeasibilityWeights = DEFAULT_WEIGHTS,
                           thresholds: tuple[float, float] = DEFAULT_THRESHOLDS,
                           notes: Mapping[str, Sequence[str]] | None = None) -> FeasibilityAssessment:
    """Build an assessment from already-decided sub-scores (backend-scored path)."""
    if not isinstance(scores, Mapping):
        scores = dict(zip(CRITERIA, scores))
    notes = notes or {}
    subs = {name: SubScore(value=float(scores[name]), notes=tuple(notes.get(name, ())))
            for name in CRITERIA}
    total = weighted_total({n: s.value for n, s in subs.items()}, weights)
    return FeasibilityAssessment(
        **subs, weighted_total=total, verdict=verdict_of(total, thresholds), weights=weights)


def _criterion_from_probes(criterion: str, rubric: Rubric,
                           by_source: Mapping[str, list[ResourceProbeResult]],
                           failures: Mapping[str, str]) -> SubScore:
    tags = rubric.sources.get(criterion, ())
    results: list[ResourceProbeResult] = []
    notes: list[str] = []
    for tag in tags:
        if tag in failures:
            notes.append(f"degraded evidence: {tag} probe failed: {failures[tag]}")
            continue
        if tag not in by_source:
            notes.append(f"degraded evidence: no {tag} probe configured")
            continue
        for result in by_source[tag]:
            results.append(result)
            notes.append(f"{result.source}: {'found' if result.found else 'not found'}"
                         + (f" - {result.detail}" if result.detail else ""))
    if not results:
        notes.append("no usable evidence; score set to rubric floor")
        return SubScore(value=rubric.floor, notes=tuple(notes))
    hit_rate = sum(1 for r in results if r.found) / len(results)
    return SubScore(value=min(10.0, max(rubric.floor, 10.0 * hit_rate)), notes=tuple(notes))


def assess(hypothesis,
           probes: Mapping[str, ResourceProbe] | Sequence[ResourceProbe],
           rubric: Rubric = DEFAULT_RUBRIC,
           weights: FeasibilityWeights = DEFAULT_WEIGHTS,
           thresholds: tuple[float, float] = DEFAULT_THRESHOLDS) -> FeasibilityAssessment:
    """Probe external resources and fold the hit-rates into a verdict.

    A failing probe degrades the affected criterion (noted in its evidence)
    instead of aborting the assessment.
    """
    if isinstance(probes, Mapping):
        probe_list = list(probes.values())
    else:
        probe_list = list(probes)

    by_source: dict[str, list[ResourceProbeResult]] = {}
    failures: dict[str, str] = {}
    for probe in probe_list:
        try:
            results = probe.search(hypothesis)
        except Exception as exc:
            failures[probe.source] = str(exc)
            continue
        by_source.setdefault(probe.source, []).extend(results)

    subs = {name: _criterion_from_probes(name, rubric, by_source, failures)
            for name in CRITERIA}
    total = weighted_total({n: s.value for n, s in subs.items()}, weights)
    return FeasibilityAssessment(
        **subs, weighted_total=total, verdict=verdict_of(total, thresholds), weights=weights)
