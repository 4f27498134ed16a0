"""Local-graph construction, embedding-driven fusion, and pruning.

Fusion merges every node pair whose embedding cosine meets the threshold
(inclusive), closing transitively with union-find. The canonical member of
a merged group is the lexicographically smallest (name, type) pair, which
makes fusion order-independent. Redundant directed edges (same canonical
endpoints and relation) merge by weight summation, so total edge weight is
conserved; merge-induced self-loops are kept for the same reason.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from sage.embeddings import EmbeddingError, EmbeddingProvider, cosine, embedding_text
from sage.kg.types import (
    Edge,
    Evidence,
    KnowledgeGraph,
    LocalGraph,
    Node,
    NodeKey,
    Triple,
)

DEFAULT_TAU = 0.9
DEFAULT_MIN_COMPONENT = 3


class FusionError(Exception):
    """Raised when fusion cannot proceed (e.g. an entity fails to embed)."""


def build_local_graph(doc_id: str, triples: Sequence[Triple]) -> LocalGraph:
    """One node per (name, type); one edge per directed (head, relation, tail)
    with weight = max supporting confidence."""
    graph = LocalGraph(doc_id=doc_id)
    for triple in triples:
        if triple.doc_id != doc_id:
            raise ValueError(f"triple doc_id {triple.doc_id!r} does not match {doc_id!r}")
        for key in (triple.head_key, triple.tail_key):
            if key not in graph.nodes:
                graph.nodes[key] = Node(name=key[0], type=key[1])
        edge_key = (triple.head_key, triple.relation_norm, triple.tail_key)
        new_evidence = Evidence(doc_id=triple.doc_id, text=triple.evidence, confidence=triple.confidence)
        existing = graph.edges.get(edge_key)
        if existing is None:
            graph.edges[edge_key] = Edge(
                head=triple.head_key,
                tail=triple.tail_key,
                relation=triple.relation_norm,
                weight=triple.confidence,
                evidence=(new_evidence,),
                docs=(triple.doc_id,),
                evidence_count=1,
            )
        else:
            evidence = existing.evidence + (new_evidence,)
            graph.edges[edge_key] = Edge(
                head=existing.head,
                tail=existing.tail,
                relation=existing.relation,
                weight=max(existing.weight, triple.confidence),
                evidence=evidence,
                docs=existing.docs,
                evidence_count=len(evidence),
            )
    return graph


class _UnionFind:
    def __init__(self, items: Iterable[NodeKey]):
        self.parent: dict[NodeKey, NodeKey] = {item: item for item in items}

    def find(self, item: NodeKey) -> NodeKey:
        root = item
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[item] != root:
            self.parent[item], item = root, self.parent[item]
        return root

    def union(self, a: NodeKey, b: NodeKey) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # smaller key becomes the root so roots are already canonical
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def fuse_graphs(
    locals_: Sequence[LocalGraph | KnowledgeGraph],
    provider: EmbeddingProvider,
    tau: float = DEFAULT_TAU,
) -> KnowledgeGraph:
    """Union the input graphs, merging nodes with cosine >= tau.

    Accepts already-fused graphs as inputs so a fused result can be fused
    again (idempotence) or disjoint batches fused in parallel then combined.
    """
    if not 0.0 < tau <= 1.0:
        raise ValueError(f"tau must be in (0,1], got {tau}")

    # Collect unique node keys and any aliases they already carry.
    aliases_of: dict[NodeKey, set[str]] = {}
    for graph in locals_:
        for key, node in graph.nodes.items():
            aliases_of.setdefault(key, set()).update(node.aliases)
    keys = sorted(aliases_of)

    vectors = {}
    for key in keys:
        text = embedding_text(*key)
        try:
            vectors[key] = provider.embed(text)
        except EmbeddingError as exc:
            raise FusionError(f"embedding failed for entity {text!r}: {exc}") from exc

    uf = _UnionFind(keys)
    for i, a in enumerate(keys):
        for b in keys[i + 1:]:
            if cosine(vectors[a], vectors[b]) >= tau:
                uf.union(a, b)

    canonical = {key: uf.find(key) for key in keys}

    nodes: dict[NodeKey, Node] = {}
    grouped_aliases: dict[NodeKey, set[str]] = {}
    for key in keys:
        root = canonical[key]
        bucket = grouped_aliases.setdefault(root, set())
        bucket.update(aliases_of[key])
        if key != root:
            bucket.add(embedding_text(*key))
    for root, alias_set in grouped_aliases.items():
        nodes[root] = Node(name=root[0], type=root[1], aliases=tuple(sorted(alias_set)))

    merged: dict[tuple[NodeKey, str, NodeKey], dict] = {}
    for graph in locals_:
        for edge in graph.edge_list:
            head = canonical[edge.head]
            tail = canonical[edge.tail]
            slot = merged.setdefault(
                (head, edge.relation, tail),
                {"weight": 0.0, "evidence": [], "docs": set(), "count": 0},
            )
            slot["weight"] += edge.weight
            slot["evidence"].extend(edge.evidence)
            slot["docs"].update(edge.docs)
            slot["count"] += edge.evidence_count

    edges = [
        Edge(
            head=head,
            tail=tail,
            relation=relation,
            weight=slot["weight"],
            evidence=tuple(slot["evidence"]),
            docs=tuple(sorted(slot["docs"])),
            evidence_count=slot["count"],
        )
        for (head, relation, tail), slot in sorted(merged.items())
    ]

    source_docs = sorted({doc for graph in locals_ for doc in _graph_docs(graph)})
    return KnowledgeGraph(
        nodes=nodes,
        edges=edges,
        metadata={"tau": tau, "source_docs": source_docs, "merged_groups": sum(
            1 for key in keys if canonical[key] != key
        )},
    )


def _graph_docs(graph: LocalGraph | KnowledgeGraph) -> list[str]:
    if isinstance(graph, LocalGraph):
        return [graph.doc_id]
    return list(graph.metadata.get("source_docs", []))


def prune(graph: KnowledgeGraph, min_component_size: int = DEFAULT_MIN_COMPONENT) -> KnowledgeGraph:
    """Drop weakly-connected components smaller than min_component_size."""
    if min_component_size < 1:
        raise ValueError(f"min_component_size must be >= 1, got {min_component_size}")
    keep: set[NodeKey] = set()
    for component in graph.weak_components():
        if len(component) >= min_component_size:
            keep |= component
    nodes = {key: node for key, node in graph.nodes.items() if key in keep}
    edges = [edge for edge in graph.edges if edge.head in keep and edge.tail in keep]
    metadata = dict(graph.metadata)
    metadata["min_component_size"] = min_component_size
    return KnowledgeGraph(nodes=nodes, edges=edges, metadata=metadata)


def graphs_equal(a: KnowledgeGraph, b: KnowledgeGraph, weight_tol: float = 0.0) -> bool:
    """Structural equality on canonical forms: node (name, type, aliases) and
    edge (endpoints, relation, weight, evidence_count, docs)."""
    nodes_a = {key: node.aliases for key, node in a.nodes.items()}
    nodes_b = {key: node.aliases for key, node in b.nodes.items()}
    if nodes_a != nodes_b:
        return False
    edges_a = {e.key: (e.weight, e.evidence_count, e.docs) for e in a.edges}
    edges_b = {e.key: (e.weight, e.evidence_count, e.docs) for e in b.edges}
    if set(edges_a) != set(edges_b):
        return False
    for key, (weight, count, docs) in edges_a.items():
        other_weight, other_count, other_docs = edges_b[key]
        if abs(weight - other_weight) > weight_tol:
            return False
        if count != other_count or docs != other_docs:
            return False
    return True
