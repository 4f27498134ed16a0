"""Simple-path enumeration over the fused graph.

Paths never revisit a node: cyclic walks verbalize incoherently and inflate
the novelty metric. Parallel edges with different relations yield distinct
paths. Enumeration order is deterministic: traversed-edge-weight sum
descending, then lexicographic on the (entities, relations) pair, truncated
to the beam width.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from sage.kg.types import KnowledgeGraph, NodeKey


class PathError(Exception):
    pass


@dataclass(frozen=True)
class CandidatePath:
    """Ordered entity chain with the relations that connect it."""

    entities: tuple[NodeKey, ...]
    relations: tuple[str, ...]
    description: str

    def __post_init__(self):
        if len(self.entities) < 2:
            raise PathError("a path needs at least two entities")
        if len(self.relations) != len(self.entities) - 1:
            raise PathError("relation count must be entity count minus one")

    @property
    def hops(self) -> int:
        return len(self.relations)


def verbalize(entities: Sequence[NodeKey], relations: Sequence[str]) -> str:
    """Entity and relation names concatenated in traversal order,
    e.g. "FN1 upregulates COL1A1"."""
    parts = [entities[0][0]]
    for relation, entity in zip(relations, entities[1:]):
        parts.append(relation)
        parts.append(entity[0])
    return " ".join(parts)


def make_path(entities: Sequence[NodeKey], relations: Sequence[str]) -> CandidatePath:
    return CandidatePath(
        entities=tuple(entities),
        relations=tuple(relations),
        description=verbalize(entities, relations),
    )


def enumerate_paths(
    graph: KnowledgeGraph,
    sources: Iterable[NodeKey],
    targets: Iterable[NodeKey],
    max_hops: int = 4,
    beam: int = 50,
) -> list[CandidatePath]:
    """All simple source-to-target paths using <= max_hops edges, beam-truncated."""
    if max_hops < 1:
        raise ValueError(f"max_hops must be >= 1, got {max_hops}")
    if beam < 1:
        raise ValueError(f"beam must be >= 1, got {beam}")
    source_set = set(sources)
    target_set = set(targets)
    for key in sorted(source_set | target_set):
        if key not in graph.nodes:
            raise PathError(f"node {key} not in graph")

    out_edges: dict[NodeKey, list] = {}
    for edge in graph.edges:
        out_edges.setdefault(edge.head, []).append(edge)
    for edges in out_edges.values():
        edges.sort(key=lambda e: (e.tail, e.relation))

    found: list[tuple[float, tuple, tuple]] = []

    def walk(node: NodeKey, entities: list[NodeKey], relations: list[str], weight: float):
        if node in target_set and relations:
            found.append((weight, tuple(entities), tuple(relations)))
        if len(relations) == max_hops:
            return
        for edge in out_edges.get(node, []):
            if edge.tail in entities:
                continue
            entities.append(edge.tail)
            relations.append(edge.relation)
            walk(edge.tail, entities, relations, weight + edge.weight)
            entities.pop()
            relations.pop()

    for source in sorted(source_set):
        walk(source, [source], [], 0.0)

    found.sort(key=lambda item: (-item[0], item[1], item[2]))
    return [make_path(entities, relations) for _, entities, relations in found[:beam]]
