"""Knowledge-graph construction, fusion, pruning, persistence, and sampling."""

from sage.kg.types import (
    Evidence,
    KnowledgeGraph,
    LocalGraph,
    Node,
    NodeKey,
    Edge,
    Triple,
    QualitySample,
    DEFAULT_ONTOLOGY_TYPES,
    DEFAULT_RELATIONS,
    FALLBACK_RELATION,
)
from sage.kg.ingest import ingest_triples, parse_triple_stream, RejectionReport
from sage.kg.graph import build_local_graph, fuse_graphs, prune, graphs_equal, FusionError
from sage.kg.graphml import serialize_graphml, parse_graphml, GraphMLError
from sage.kg.sampling import stratified_sample, attach_judgments, SamplingError, TripleJudgment

__all__ = [
    "Triple",
    "Evidence",
    "Node",
    "NodeKey",
    "Edge",
    "LocalGraph",
    "KnowledgeGraph",
    "QualitySample",
    "TripleJudgment",
    "RejectionReport",
    "DEFAULT_ONTOLOGY_TYPES",
    "DEFAULT_RELATIONS",
    "FALLBACK_RELATION",
    "ingest_triples",
    "parse_triple_stream",
    "build_local_graph",
    "fuse_graphs",
    "prune",
    "graphs_equal",
    "serialize_graphml",
    "parse_graphml",
    "stratified_sample",
    "attach_judgments",
    "FusionError",
    "GraphMLError",
    "SamplingError",
]
