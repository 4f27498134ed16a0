"""Independent brute-force reference implementations used by the test suite.

These deliberately avoid the library's own graph/scoring code paths: plain
dicts, plain loops, math.log. They re-derive every published formula from
scratch so the production implementations are checked against a second,
structurally different derivation.
"""

from __future__ import annotations

import math
from typing import Sequence


def dot(a, b) -> float:
    return float(sum(x * y for x, y in zip(a, b)))


def plain_cosine(a, b) -> float:
    return dot(a, b) / math.sqrt(dot(a, a) * dot(b, b))


# ---------------------------------------------------------------------------
# Fusion: exhaustive pairwise merge to fixpoint (no union-find).
# ---------------------------------------------------------------------------

def fuse_fixpoint_oracle(locals_: Sequence, vectors: dict, tau: float) -> dict:
    """Merge any two groups with a cross-pair cosine >= tau until no pair
    qualifies. Returns {"nodes": {canonical_key: aliases tuple},
    "edges": {(head, relation, tail): (weight, evidence_count, docs)}}."""
    all_keys = sorted({key for graph in locals_ for key in graph.nodes})
    groups: list[set] = [{key} for key in all_keys]
    changed = True
    while changed:
        changed = False
        for i in range(len(groups)):
            for j in range(i + 1, len(groups)):
                if any(
                    plain_cosine(vectors[a], vectors[b]) >= tau
                    for a in groups[i]
                    for b in groups[j]
                ):
                    groups[i] = groups[i] | groups[j]
                    del groups[j]
                    changed = True
                    break
            if changed:
                break

    canonical = {}
    for group in groups:
        root = min(group)
        for key in group:
            canonical[key] = root

    nodes = {}
    for group in groups:
        root = min(group)
        aliases = set()
        for key in group:
            for graph in locals_:
                node = graph.nodes.get(key)
                if node is not None:
                    aliases.update(node.aliases)
            if key != root:
                aliases.add(f"{key[0]} [{key[1]}]")
        nodes[root] = tuple(sorted(aliases))

    edges: dict = {}
    for graph in locals_:
        for edge in graph.edge_list:
            key = (canonical[edge.head], edge.relation, canonical[edge.tail])
            weight, count, docs = edges.get(key, (0.0, 0, set()))
            edges[key] = (
                weight + edge.weight,
                count + edge.evidence_count,
                docs | set(edge.docs),
            )
    edges = {key: (w, c, tuple(sorted(d))) for key, (w, c, d) in edges.items()}
    return {"nodes": nodes, "edges": edges}


def prune_oracle(nodes: dict, edges: dict, min_size: int) -> dict:
    """Independent weak-component prune over the oracle's dict shapes."""
    neighbors = {key: set() for key in nodes}
    for head, _, tail in edges:
        neighbors[head].add(tail)
        neighbors[tail].add(head)
    remaining = set(nodes)
    keep = set()
    while remaining:
        start = remaining.pop()
        component = {start}
        frontier = [start]
        while frontier:
            current = frontier.pop()
            for other in neighbors[current]:
                if other not in component:
                    component.add(other)
                    frontier.append(other)
        remaining -= component
        if len(component) >= min_size:
            keep |= component
    return {
        "nodes": {k: v for k, v in nodes.items() if k in keep},
        "edges": {k: v for k, v in edges.items() if k[0] in keep and k[2] in keep},
    }


# ---------------------------------------------------------------------------
# Path enumeration and four-metric scoring.
# ---------------------------------------------------------------------------

def enumerate_paths_oracle(edges: Sequence[tuple], sources, targets, max_hops: int):
    """All simple paths (as (entity tuple, relation tuple)) from any source
    to any target using <= max_hops edges. edges are (head, relation, tail)."""
    out_by_node: dict = {}
    for head, relation, tail in edges:
        out_by_node.setdefault(head, []).append((relation, tail))
    found = []

    def walk(node, entities, relations):
        if node in targets and len(relations) >= 1:
            found.append((tuple(entities), tuple(relations)))
        if len(relations) == max_hops:
            return
        for relation, nxt in out_by_node.get(node, []):
            if nxt in entities:
                continue
            walk(nxt, entities + [nxt], relations + [relation])

    for source in sorted(sources):
        walk(source, [source], [])
    return found


def verbalize_oracle(entities, relations) -> str:
    parts = [entities[0][0]]
    for relation, entity in zip(relations, entities[1:]):
        parts.append(relation)
        parts.append(entity[0])
    return " ".join(parts)


def minmax_oracle(raw: Sequence[float]) -> list[float]:
    lo, hi = min(raw), max(raw)
    if hi == lo:
        return [0.5 for _ in raw]
    return [(value - lo) / (hi - lo) for value in raw]


def score_batch_oracle(
    paths,
    degrees: dict,
    node_types: dict,
    query_vec,
    center_vec,
    entity_vectors: dict,
    path_vectors: dict,
    weights: tuple[float, float, float, float],
    epsilon: float = 1e-6,
    smoothing: float = 1e-6,
    rescale: tuple[float, float] = (-1.0, 1.0),
):
    """Recompute logic/relevance/novelty/surprise/total for a batch.

    paths: list of (entities tuple, relations tuple). path_vectors maps the
    verbalized string to its embedding (same provider as production; the
    oracle re-derives the formulas, not the embeddings).
    """
    logic = []
    relevance = []
    novelty_raw = []
    surprise_raw = []

    total_degree = sum(degrees.values())
    categories = sorted(set(node_types.values()))
    graph_counts = {c: 0 for c in categories}
    for _, node_type in node_types.items():
        graph_counts[node_type] += 1
    n_nodes = len(node_types)

    def smooth(dist: dict) -> dict:
        total = sum(dist.values()) + smoothing * len(categories)
        return {c: (dist.get(c, 0.0) + smoothing) / total for c in categories}

    expected = smooth({c: graph_counts[c] / n_nodes for c in categories})

    lo, hi = rescale
    for entities, relations in paths:
        text = verbalize_oracle(entities, relations)
        logic.append(plain_cosine(query_vec, path_vectors[text]))

        distances = []
        for entity in entities:
            vec = entity_vectors[entity]
            distances.append(math.sqrt(sum((x - y) ** 2 for x, y in zip(vec, center_vec))))
        raw_rel = 1.0 - sum(distances) / len(distances)
        scaled = (raw_rel - lo) / (hi - lo)
        relevance.append(min(1.0, max(0.0, scaled)))

        info = []
        for entity in entities:
            p = (degrees[entity] + epsilon) / (total_degree + epsilon)
            info.append(-math.log(p))
        novelty_raw.append(sum(info) / len(info))

        path_counts = {c: 0 for c in categories}
        for entity in entities:
            path_counts[node_types[entity]] += 1
        actual = smooth({c: path_counts[c] / len(entities) for c in categories})
        kl = sum(actual[c] * math.log(actual[c] / expected[c]) for c in categories)
        surprise_raw.append(kl)

    novelty = minmax_oracle(novelty_raw)
    surprise = minmax_oracle(surprise_raw)

    w_l, w_r, w_n, w_s = weights
    weight_sum = w_l + w_r + w_n + w_s
    results = []
    for i, (entities, relations) in enumerate(paths):
        total = (w_l * logic[i] + w_r * relevance[i] + w_n * novelty[i] + w_s * surprise[i]) / weight_sum
        results.append(
            {
                "description": verbalize_oracle(entities, relations),
                "logic": logic[i],
                "relevance": relevance[i],
                "novelty": novelty[i],
                "surprise": surprise[i],
                "surprise_raw": surprise_raw[i],
                "total": total,
            }
        )
    order = sorted(
        range(len(results)),
        key=lambda i: (-results[i]["total"], -results[i]["novelty"], results[i]["description"]),
    )
    return [results[i] for i in order]
