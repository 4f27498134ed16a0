"""Command-line entry points for graph construction and quality sampling."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from sage.embeddings import MockEmbeddingProvider
from sage.kg.graph import build_local_graph, fuse_graphs, prune
from sage.kg.graphml import parse_graphml, serialize_graphml
from sage.kg.ingest import ingest_triples, parse_triple_stream
from sage.kg.sampling import stratified_sample


@click.group()
def main():
    """Knowledge-graph construction and sampling."""


@main.command()
@click.option("--triples", "triples_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--min-confidence", default=0.5, show_default=True, type=float)
@click.option("--tau", default=0.9, show_default=True, type=float)
@click.option("--min-component", default=3, show_default=True, type=int)
@click.option("--embed-seed", default=0, show_default=True, type=int,
              help="Seed for the deterministic embedding provider.")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
def build(triples_path: str, min_confidence: float, tau: float, min_component: int,
          embed_seed: int, out_path: str):
    """Ingest newline-delimited JSON triples, fuse per-document graphs, prune,
    and write GraphML."""
    with open(triples_path, "r", encoding="utf-8") as fh:
        records = list(parse_triple_stream(fh))
    accepted, report = ingest_triples(records, min_confidence=min_confidence)

    by_doc: dict[str, list] = {}
    for triple in accepted:
        by_doc.setdefault(triple.doc_id, []).append(triple)
    locals_ = [build_local_graph(doc_id, doc_triples) for doc_id, doc_triples in sorted(by_doc.items())]

    provider = MockEmbeddingProvider(seed=embed_seed)
    fused = fuse_graphs(locals_, provider, tau=tau)
    pruned = prune(fused, min_component_size=min_component)
    Path(out_path).write_bytes(serialize_graphml(pruned))

    click.echo(json.dumps({
        "ingestion": report.to_dict(),
        "documents": len(locals_),
        "nodes_before_prune": len(fused.nodes),
        "nodes": len(pruned.nodes),
        "edges": len(pruned.edges),
        "out": out_path,
    }, indent=2))


@main.command()
@click.option("--graph", "graph_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--allocation", "allocation_spec", required=True,
              help="JSON object mapping relation tag to sample count, or a path to one.")
@click.option("--seed", required=True, type=int)
@click.option("--out", "out_path", default=None, type=click.Path(dir_okay=False))
def sample(graph_path: str, allocation_spec: str, seed: int, out_path: str | None):
    """Draw a stratified assertion sample from a GraphML graph."""
    if Path(allocation_spec).is_file():
        allocation = json.loads(Path(allocation_spec).read_text(encoding="utf-8"))
    else:
        allocation = json.loads(allocation_spec)
    graph, warnings = parse_graphml(Path(graph_path).read_bytes())
    for warning in warnings:
        click.echo(f"warning: {warning}", err=True)
    result = stratified_sample(graph, allocation, seed)
    payload = json.dumps({"seed": seed, "allocation": result.allocation, "items": result.items}, indent=2)
    if out_path:
        Path(out_path).write_text(payload + "\n", encoding="utf-8")
        click.echo(f"wrote {len(result.items)} sampled assertions to {out_path}")
    else:
        click.echo(payload)


if __name__ == "__main__":
    sys.exit(main())
