"""Multi-critic novelty deliberation and the five-tier benchmark harness."""

from sage.debate.types import (
    Citation,
    CriticAssessment,
    DebateConfig,
    DebateState,
    NoveltyVerdict,
    TranscriptEvent,
    ROLES,
    PROVER,
    VERIFIER,
    JUDGE,
)
from sage.debate.protocol import (
    DebateBackendError,
    deliberate,
    initial_assess,
    population_sigma,
    run_round,
    should_debate,
)
from sage.debate.backends import CallableCritic, CriticBackend, ProbeVerifier, ScriptedCritic
from sage.debate.benchmark import (
    TIER_RANGES,
    TIER_CONTRADICTIONS,
    SyntheticTierCritic,
    TierProposal,
    make_tier_dataset,
    run_benchmark,
    synthetic_critics,
)

__all__ = [
    "Citation",
    "CriticAssessment",
    "DebateConfig",
    "DebateState",
    "NoveltyVerdict",
    "TranscriptEvent",
    "ROLES",
    "PROVER",
    "VERIFIER",
    "JUDGE",
    "DebateBackendError",
    "population_sigma",
    "should_debate",
    "initial_assess",
    "run_round",
    "deliberate",
    "CriticBackend",
    "ScriptedCritic",
    "CallableCritic",
    "ProbeVerifier",
    "TIER_RANGES",
    "TIER_CONTRADICTIONS",
    "SyntheticTierCritic",
    "TierProposal",
    "make_tier_dataset",
    "run_benchmark",
    "synthetic_critics",
]
