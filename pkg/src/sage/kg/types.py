"""Core graph value types.

Entity identity is the (name, type) pair. Graphs are directed multigraphs:
parallel edges between the same endpoints are distinct when their normalized
relation differs. All values are treated as immutable after construction so
graphs can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

NodeKey = tuple[str, str]  # (name, ontology type)

DEFAULT_ONTOLOGY_TYPES = (
    "Gene",
    "Pathway",
    "Disease",
    "ClinicalEndpoint",
    "TissueRegion",
    "StainingMethod",
    "Algorithm",
)

DEFAULT_RELATIONS = (
    "associated_with",
    "upregulates",
    "downregulates",
    "inhibits",
    "activates",
    "expressed_in",
    "biomarker_for",
    "treats",
    "causes",
    "part_of",
    "predicts",
    "interacts_with",
    "correlates_with",
)

# Unknown normalized relations collapse onto this tag at ingestion.
FALLBACK_RELATION = "associated_with"


def normalize_name(raw: str) -> str:
    """Strip and collapse internal whitespace runs to single spaces."""
    return " ".join(str(raw).split())


@dataclass(frozen=True)
class Triple:
    """One extracted assertion with its provenance."""

    head: str
    head_type: str
    relation_text: str
    relation_norm: str
    tail: str
    tail_type: str
    confidence: float
    evidence: str
    doc_id: str

    @property
    def head_key(self) -> NodeKey:
        return (self.head, self.head_type)

    @property
    def tail_key(self) -> NodeKey:
        return (self.tail, self.tail_type)


@dataclass(frozen=True)
class Evidence:
    """Supporting span for an edge."""

    doc_id: str
    text: str
    confidence: float


@dataclass(frozen=True)
class Node:
    name: str
    type: str
    aliases: tuple[str, ...] = ()

    @property
    def key(self) -> NodeKey:
        return (self.name, self.type)


@dataclass(frozen=True)
class Edge:
    """Directed edge. evidence may be empty after a persistence round trip;
    evidence_count and docs survive serialization either way."""

    head: NodeKey
    tail: NodeKey
    relation: str
    weight: float
    evidence: tuple[Evidence, ...] = ()
    docs: tuple[str, ...] = ()
    evidence_count: int = 0

    @property
    def key(self) -> tuple[NodeKey, str, NodeKey]:
        return (self.head, self.relation, self.tail)


@dataclass
class LocalGraph:
    """Per-document graph; edge weight = max confidence among its triples."""

    doc_id: str
    nodes: dict[NodeKey, Node] = field(default_factory=dict)
    edges: dict[tuple[NodeKey, str, NodeKey], Edge] = field(default_factory=dict)

    @property
    def edge_list(self) -> list[Edge]:
        return list(self.edges.values())


@dataclass
class KnowledgeGraph:
    """Fused global graph with canonical nodes and merged evidence."""

    nodes: dict[NodeKey, Node] = field(default_factory=dict)
    edges: list[Edge] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)
    _degrees: Optional[dict[NodeKey, int]] = field(default=None, repr=False)

    @property
    def edge_list(self) -> list[Edge]:
        return self.edges

    def degree(self, key: NodeKey) -> int:
        if self._degrees is None:
            self._degrees = self.recompute_degrees()
        return self._degrees[key]

    def degrees(self) -> dict[NodeKey, int]:
        if self._degrees is None:
            self._degrees = self.recompute_degrees()
        return dict(self._degrees)

    def recompute_degrees(self) -> dict[NodeKey, int]:
        """In-degree plus out-degree; a self-loop contributes 2."""
        deg = {key: 0 for key in self.nodes}
        for edge in self.edges:
            deg[edge.head] += 1
            deg[edge.tail] += 1
        return deg

    def out_edges(self, key: NodeKey) -> list[Edge]:
        return [e for e in self.edges if e.head == key]

    def weak_components(self) -> list[set[NodeKey]]:
        """Connected components ignoring edge direction."""
        adjacency: dict[NodeKey, set[NodeKey]] = {key: set() for key in self.nodes}
        for edge in self.edges:
            adjacency[edge.head].add(edge.tail)
            adjacency[edge.tail].add(edge.head)
        seen: set[NodeKey] = set()
        components: list[set[NodeKey]] = []
        for start in self.nodes:
            if start in seen:
                continue
            stack = [start]
            component: set[NodeKey] = set()
            while stack:
                current = stack.pop()
                if current in component:
                    continue
                component.add(current)
                stack.extend(adjacency[current] - component)
            seen |= component
            components.append(component)
        return components

    def to_dict(self) -> dict:
        """Plain JSON-ready structure, canonically ordered."""
        return {
            "nodes": [
                {"name": n.name, "type": n.type, "aliases": list(n.aliases)}
                for n in sorted(self.nodes.values(), key=lambda n: n.key)
            ],
            "edges": [
                {
                    "head": list(e.head),
                    "relation": e.relation,
                    "tail": list(e.tail),
                    "weight": e.weight,
                    "evidence_count": e.evidence_count,
                    "docs": list(e.docs),
                }
                for e in sorted(self.edges, key=lambda e: e.key)
            ],
            "metadata": dict(self.metadata),
        }


def iter_edge_triples(edges: Iterable[Edge]):
    """(head, relation, tail) view used by samplers and verbalization."""
    for edge in edges:
        yield edge.head, edge.relation, edge.tail


@dataclass
class QualitySample:
    """Stratified edge sample for manual extraction-quality review.

    summary stays None until judgments are attached; once attached it is
    recomputed exactly from the judgment booleans.
    """

    items: list[dict]
    allocation: dict[str, int]
    seed: int
    judgments: Optional[list["TripleJudgment"]] = None
    summary: Optional[dict[str, float]] = None


@dataclass(frozen=True)
class TripleJudgment:
    factually_grounded: bool
    relation_correct: bool
    entity_type_correct_strict: bool
    entity_type_correct_lenient: bool
