"""The four path metrics and their weighted aggregate.

Logic and Relevance are per-path; Novelty and Surprise are batch metrics
(min-max normalized across the scored batch, 0.5 for every path when a
batch is degenerate). The aggregate divides by the weight sum, so scaling
all weights by a positive constant changes nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from sage.embeddings import DomainCenter, EmbeddingProvider, cosine
from sage.kg.types import KnowledgeGraph
from sage.pathrank.search import CandidatePath, PathError

DEFAULT_EPSILON = 1e-6
DEFAULT_SMOOTHING = 1e-6
DEFAULT_RESCALE = (-1.0, 1.0)


@dataclass(frozen=True)
class ScoringWeights:
    logic: float = 0.2
    relevance: float = 0.2
    novelty: float = 0.35
    surprise: float = 0.25

    def __post_init__(self):
        values = (self.logic, self.relevance, self.novelty, self.surprise)
        if any(w < 0 for w in values):
            raise ValueError(f"weights must be nonnegative, got {values}")
        if sum(values) <= 0:
            raise ValueError("at least one weight must be positive")

    @property
    def total(self) -> float:
        return self.logic + self.relevance + self.novelty + self.surprise


DEFAULT_WEIGHTS = ScoringWeights()


@dataclass(frozen=True)
class PathScores:
    logic: float
    relevance: float
    novelty: float
    surprise: float
    total: float

    def to_dict(self) -> dict[str, float]:
        return {
            "logic": self.logic,
            "relevance": self.relevance,
            "novelty": self.novelty,
            "surprise": self.surprise,
            "total": self.total,
        }


@dataclass(frozen=True)
class ScoringConfig:
    epsilon: float = DEFAULT_EPSILON
    smoothing: float = DEFAULT_SMOOTHING
    rescale: tuple[float, float] = DEFAULT_RESCALE

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.smoothing <= 0:
            raise ValueError("smoothing must be positive")
        lo, hi = self.rescale
        if not lo < hi:
            raise ValueError(f"rescale interval must have lo < hi, got {self.rescale}")


def score_logic(query: str, path: CandidatePath, provider: EmbeddingProvider) -> float:
    """Cosine of the query embedding and the verbalized-path embedding."""
    return cosine(provider.embed(query), provider.embed(path.description))


def score_relevance(
    path: CandidatePath,
    center: DomainCenter,
    provider: EmbeddingProvider,
    rescale: tuple[float, float] = DEFAULT_RESCALE,
) -> float:
    """1 minus the mean entity-to-center distance, rescaled into [0,1]."""
    lo, hi = rescale
    if not lo < hi:
        raise ValueError(f"rescale interval must have lo < hi, got {rescale}")
    distances = [
        float(np.linalg.norm(provider.embed(f"{name} [{type_}]") - center.vector))
        for name, type_ in path.entities
    ]
    raw = 1.0 - sum(distances) / len(distances)
    return min(1.0, max(0.0, (raw - lo) / (hi - lo)))


def _minmax(raw: list[float]) -> list[float]:
    lo, hi = min(raw), max(raw)
    if hi == lo:
        return [0.5] * len(raw)
    return [(value - lo) / (hi - lo) for value in raw]


def novelty_raw(path: CandidatePath, degrees: dict, total_degree: float, epsilon: float) -> float:
    # denominator carries a single epsilon, exactly as the formula is written
    info = [
        -math.log((degrees[key] + epsilon) / (total_degree + epsilon))
        for key in path.entities
    ]
    return sum(info) / len(info)


def score_novelty_batch(
    paths: list[CandidatePath],
    graph: KnowledgeGraph,
    epsilon: float = DEFAULT_EPSILON,
) -> list[float]:
    """Mean information content of path entities, min-max normalized."""
    if not paths:
        raise ValueError("empty path batch")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    degrees = graph.degrees()
    for path in paths:
        for key in path.entities:
            if key not in degrees:
                raise PathError(f"node {key} not in graph")
    total_degree = float(sum(degrees.values()))
    raw = [novelty_raw(path, degrees, total_degree, epsilon) for path in paths]
    return _minmax(raw)


def _smooth(dist: dict[str, float], categories: list[str], smoothing: float) -> dict[str, float]:
    total = sum(dist.values()) + smoothing * len(categories)
    return {c: (dist.get(c, 0.0) + smoothing) / total for c in categories}


def surprise_raw(
    path: CandidatePath,
    expected: dict[str, float],
    categories: list[str],
    smoothing: float,
) -> float:
    counts: dict[str, float] = {}
    for _, type_ in path.entities:
        counts[type_] = counts.get(type_, 0.0) + 1.0
    n = len(path.entities)
    actual = _smooth({c: counts.get(c, 0.0) / n for c in categories}, categories, smoothing)
    return sum(actual[c] * math.log(actual[c] / expected[c]) for c in categories)


def graph_category_distribution(graph: KnowledgeGraph) -> dict[str, float]:
    """Node-census category distribution (not degree-weighted)."""
    counts: dict[str, float] = {}
    for _, type_ in graph.nodes:
        counts[type_] = counts.get(type_, 0.0) + 1.0
    if not counts:
        raise ValueError("graph has no nodes, category set is empty")
    n = len(graph.nodes)
    return {c: counts[c] / n for c in sorted(counts)}


def score_surprise_batch(
    paths: list[CandidatePath],
    graph: KnowledgeGraph,
    smoothing: float = DEFAULT_SMOOTHING,
) -> list[float]:
    """KL divergence of each path's category mix from the graph-wide mix,
    min-max normalized across the batch."""
    if not paths:
        raise ValueError("empty path batch")
    if smoothing <= 0:
        raise ValueError("smoothing must be positive")
    census = graph_category_distribution(graph)
    categories = sorted(census)
    expected = _smooth(census, categories, smoothing)
    for path in paths:
        for key in path.entities:
            if key not in graph.nodes:
                raise PathError(f"node {key} not in graph")
    raw = [surprise_raw(path, expected, categories, smoothing) for path in paths]
    return _minmax(raw)


def aggregate(scores: PathScores | tuple[float, float, float, float],
              weights: ScoringWeights = DEFAULT_WEIGHTS) -> float:
    if isinstance(scores, PathScores):
        values = (scores.logic, scores.relevance, scores.novelty, scores.surprise)
    else:
        values = scores
    s_l, s_r, s_n, s_s = values
    return (
        weights.logic * s_l + weights.relevance * s_r
        + weights.novelty * s_n + weights.surprise * s_s
    ) / weights.total


def rank_paths(
    query: str,
    paths: list[CandidatePath],
    graph: KnowledgeGraph,
    center: DomainCenter,
    provider: EmbeddingProvider,
    weights: ScoringWeights = DEFAULT_WEIGHTS,
    config: ScoringConfig = ScoringConfig(),
) -> list[tuple[CandidatePath, PathScores]]:
    """Score every path on all four metrics and order by descending total.

    Ties break by novelty descending, then description ascending.
    """
    if not paths:
        raise ValueError("empty path batch")
    logic = [score_logic(query, path, provider) for path in paths]
    relevance = [score_relevance(path, center, provider, config.rescale) for path in paths]
    novelty = score_novelty_batch(paths, graph, config.epsilon)
    surprise = score_surprise_batch(paths, graph, config.smoothing)
    scored = []
    for i, path in enumerate(paths):
        total = aggregate((logic[i], relevance[i], novelty[i], surprise[i]), weights)
        scored.append((path, PathScores(logic[i], relevance[i], novelty[i], surprise[i], total)))
    scored.sort(key=lambda item: (-item[1].total, -item[1].novelty, item[0].description))
    return scored
