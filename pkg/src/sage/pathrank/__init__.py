"""Multi-hop path enumeration and four-metric scoring."""

from sage.pathrank.search import CandidatePath, PathError, enumerate_paths, verbalize
from sage.pathrank.scoring import (
    DEFAULT_WEIGHTS,
    PathScores,
    ScoringConfig,
    ScoringWeights,
    aggregate,
    rank_paths,
    score_logic,
    score_novelty_batch,
    score_relevance,
    score_surprise_batch,
)

__all__ = [
    "CandidatePath",
    "PathError",
    "PathScores",
    "ScoringConfig",
    "ScoringWeights",
    "DEFAULT_WEIGHTS",
    "enumerate_paths",
    "verbalize",
    "score_logic",
    "score_relevance",
    "score_novelty_batch",
    "score_surprise_batch",
    "aggregate",
    "rank_paths",
]
