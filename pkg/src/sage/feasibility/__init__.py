"""Weighted four-criterion feasibility assessment with resource probes."""

from sage.feasibility.core import (
    CRITERIA,
    DEFAULT_THRESHOLDS,
    DEFAULT_WEIGHTS,
    FeasibilityAssessment,
    FeasibilityWeights,
    SubScore,
    VERDICTS,
    assess,
    assessment_from_scores,
    verdict_of,
    weighted_total,
)
from sage.feasibility.probes import (
    PROBE_REGISTRY,
    PROBE_SOURCES,
    CallableProbe,
    FixtureProbe,
    ProbeError,
    ResourceProbe,
    ResourceProbeResult,
    Rubric,
    DEFAULT_RUBRIC,
    load_probe_fixtures,
)

__all__ = [
    "CRITERIA",
    "VERDICTS",
    "DEFAULT_WEIGHTS",
    "DEFAULT_THRESHOLDS",
    "FeasibilityWeights",
    "SubScore",
    "FeasibilityAssessment",
    "weighted_total",
    "verdict_of",
    "assess",
    "assessment_from_scores",
    "PROBE_SOURCES",
    "PROBE_REGISTRY",
    "ResourceProbe",
    "ResourceProbeResult",
    "ProbeError",
    "FixtureProbe",
    "CallableProbe",
    "Rubric",
    "DEFAULT_RUBRIC",
    "load_probe_fixtures",
]
