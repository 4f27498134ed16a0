"""Stratified sampling of graph assertions for manual quality review.

Strata are normalized relation tags. Sampling is deterministic for a given
seed: the population of each stratum is sorted canonically before drawing.
"""

from __future__ import annotations

import random
from typing import Sequence

from sage.kg.types import KnowledgeGraph, QualitySample, TripleJudgment


class SamplingError(Exception):
    pass


def stratified_sample(graph: KnowledgeGraph, allocation: dict[str, int], seed: int) -> QualitySample:
    """Draw allocation[relation] assertions per stratum, without replacement.

    A stratum with fewer available assertions than requested is an error
    naming the stratum.
    """
    by_relation: dict[str, list] = {}
    for edge in graph.edges:
        by_relation.setdefault(edge.relation, []).append(edge)

    rng = random.Random(seed)
    items: list[dict] = []
    for relation in sorted(allocation):
        wanted = allocation[relation]
        if wanted < 0:
            raise SamplingError(f"negative allocation for stratum {relation!r}")
        pool = sorted(by_relation.get(relation, []), key=lambda e: (e.head, e.tail, e.docs))
        if wanted > len(pool):
            raise SamplingError(
                f"stratum {relation!r} has {len(pool)} assertions, {wanted} requested"
            )
        for edge in rng.sample(pool, wanted):
            items.append(
                {
                    "stratum": relation,
                    "head": edge.head[0],
                    "head_type": edge.head[1],
                    "relation": edge.relation,
                    "tail": edge.tail[0],
                    "tail_type": edge.tail[1],
                    "weight": edge.weight,
                    "docs": list(edge.docs),
                    "evidence": [ev.text for ev in edge.evidence],
                }
            )
    return QualitySample(items=items, allocation=dict(allocation), seed=seed)


def attach_judgments(sample: QualitySample, judgments: Sequence[TripleJudgment]) -> QualitySample:
    """Attach one judgment per sampled item and recompute the summary.

    Percentages are plain fractions of the judged items; hallucination rate
    is the complement of factual grounding.
    """
    if len(judgments) != len(sample.items):
        raise SamplingError(
            f"{len(judgments)} judgments for {len(sample.items)} sampled items"
        )
    n = len(judgments)
    if n == 0:
        raise SamplingError("cannot summarize an empty sample")

    def pct(flags: list[bool]) -> float:
        return 100.0 * sum(flags) / n

    grounded = pct([j.factually_grounded for j in judgments])
    summary = {
        "factual_grounding_pct": grounded,
        "relation_accuracy_pct": pct([j.relation_correct for j in judgments]),
        "entity_type_strict_pct": pct([j.entity_type_correct_strict for j in judgments]),
        "entity_type_lenient_pct": pct([j.entity_type_correct_lenient for j in judgments]),
        "hallucination_rate_pct": 100.0 - grounded,
    }
    return QualitySample(
        items=sample.items,
        allocation=sample.allocation,
        seed=sample.seed,
        judgments=list(judgments),
        summary=summary,
    )
