"""Command-line entry points for the hypothesis-discovery pipeline."""

from __future__ import annotations

import json
import re
from pathlib import Path

import click

from sage.pipeline.backends import BackendError, make_mock_backends
from sage.pipeline.compare import compare_modes
from sage.pipeline.runner import ConflictError, PipelineConfig, PipelineEngine
from sage.pipeline.store import RunStore, StoreError
from sage.pipeline.types import AWAITING_REVIEW, MODES, ReviewDecision


def graph_backed_path_generation(graph_file: str, seed: int):
    """Path-generation backend driven by a real GraphML knowledge graph."""
    from sage.embeddings import MockEmbeddingProvider, domain_center
    from sage.kg import parse_graphml
    from sage.pathrank import enumerate_paths, rank_paths

    graph, _warnings = parse_graphml(Path(graph_file).read_text(encoding="utf-8"))

    def backend(stage, context, state):
        query = state.get("query") or context
        provider = MockEmbeddingProvider(seed=state.get("seed", seed))
        names = [key[0] for key in graph.nodes]
        if not names:
            raise BackendError(stage, f"graph {graph_file!r} has no nodes")
        center = domain_center(names, provider, label="graph")
        terms = [t.lower() for t in re.findall(r"[A-Za-z][A-Za-z0-9-]{2,}", query)]
        matched = [
            key for key in graph.nodes if any(term in key[0].lower() for term in terms)
        ]
        sources = matched or list(graph.nodes)[:3]
        source_set = set(sources)
        targets = [key for key in graph.nodes if key not in source_set] or list(graph.nodes)
        candidates = enumerate_paths(graph, sources, targets, max_hops=3)
        if not candidates:
            raise BackendError(stage, "no multi-hop paths found in the supplied graph")
        ranked = rank_paths(query, candidates, graph, center, provider)
        paths, lines = [], []
        for rank, (path, scores) in enumerate(ranked[:3], start=1):
            entities = [key[0] for key in path.entities]
            item = {
                "id": f"path-{rank}",
                "entities": entities,
                "relations": list(path.relations),
                "score": round(scores.total, 6),
            }
            paths.append(item)
            hops = entities[0]
            for relation, entity in zip(item["relations"], entities[1:]):
                hops += f" -[{relation}]-> {entity}"
            lines.append(f"{rank}. {hops} (score {item['score']:.3f})")
        return {"text": "Candidate mechanistic paths:\n" + "\n".join(lines), "paths": paths}

    return backend


def _build_backends(backend_set: str, seed: int, graph: str | None):
    backends = make_mock_backends(seed)
    if graph:
        backends["path_generation"] = graph_backed_path_generation(graph, seed)
    return backends


def _echo_run(run, runs_dir: str) -> None:
    click.echo(f"run {run.run_id} [{run.mode}] -> {run.status}")
    novelty = run.verdicts.get("novelty")
    if novelty:
        click.echo(
            f"  novelty: {novelty.get('final_score'):.3f} "
            f"(iterations {novelty.get('iterations')})"
        )
    gate = run.verdicts.get("gate_feasibility")
    if gate:
        click.echo(
            f"  gate feasibility: {gate.get('weighted_total'):.2f} -> {gate.get('verdict')}"
        )
    if run.validation:
        click.echo(f"  validation: {run.validation.get('status')}")
    if run.error:
        click.echo(f"  error: {run.error}")
    if run.status == AWAITING_REVIEW:
        click.echo(
            "  paused at the review checkpoint; decide with:\n"
            f"    sage review {run.run_id} --action approve --runs-dir {runs_dir}"
        )
    else:
        click.echo(f"  run dir: {Path(runs_dir) / run.run_id}")


@click.group()
def main():
    """Hypothesis-discovery pipeline: run, review, compare, serve."""


@main.command("run")
@click.option("--query", required=True, help="initial user query")
@click.option("--mode", type=click.Choice(list(MODES)), default="gp", show_default=True)
@click.option("--graph", type=click.Path(exists=True, dir_okay=False), default=None,
              help="GraphML knowledge graph to drive path generation")
@click.option("--backends", "backend_set", type=click.Choice(["mock"]), default="mock",
              show_default=True, help="stage backend binding")
@click.option("--out", "runs_dir", type=click.Path(file_okay=False), default="runs",
              show_default=True, help="run persistence directory")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--require-review", is_flag=True,
              help="pause at the checkpoint instead of auto-approving")
@click.option("--run-id", default=None, help="fixed run id (defaults to a fresh one)")
def run_cmd(query, mode, graph, backend_set, runs_dir, seed, require_review, run_id):
    """Execute one pipeline run end to end (or up to the checkpoint)."""
    store = RunStore(runs_dir)
    config = PipelineConfig(seed=seed, auto_approve=not require_review)
    engine = PipelineEngine(store, _build_backends(backend_set, seed, graph), config)
    run = engine.start(query, mode, run_id=run_id)
    _echo_run(run, runs_dir)


@main.command("review")
@click.argument("run_id")
@click.option("--action", type=click.Choice(["approve", "revise", "reject"]), required=True)
@click.option("--statement", default=None, help="edited statement (required for revise)")
@click.option("--note", default="", help="reviewer note")
@click.option("--runs-dir", type=click.Path(file_okay=False), default="runs", show_default=True)
def review_cmd(run_id, action, statement, note, runs_dir):
    """Apply a review decision to a paused run and resume it."""
    store = RunStore(runs_dir)
    try:
        seed = store.load(run_id).seed
        decision = ReviewDecision(action=action, edited_statement=statement, note=note)
        engine = PipelineEngine(store, make_mock_backends(seed), PipelineConfig(seed=seed))
        run = engine.apply_review(run_id, decision)
    except (StoreError, ConflictError, ValueError) as exc:
        raise click.ClickException(str(exc))
    _echo_run(run, runs_dir)


@main.command("compare")
@click.option("--query", required=True)
@click.option("--seeds", type=int, default=10, show_default=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None,
              help="write the full report as JSON")
def compare_cmd(query, seeds, out_path):
    """Run the query under both context modes and tabulate token costs."""
    report = compare_modes(query, seeds=seeds)
    for entry in report["runs"]:
        click.echo(
            f"seed {entry['seed']}: gp prompt {entry['gp']['prompt_tokens']} "
            f"< cp prompt {entry['cp']['prompt_tokens']} "
            f"(reduction {entry['prompt_reduction']:.1%})"
        )
    mean = report["mean"]
    click.echo(
        f"mean prompt reduction: {mean['prompt_reduction']:.1%} "
        f"(gp {mean['gp_prompt_tokens']:.0f} vs cp {mean['cp_prompt_tokens']:.0f})"
    )
    if out_path:
        Path(out_path).write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
        click.echo(f"report written to {out_path}")


@main.command("serve")
@click.option("--port", type=int, default=8080, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--runs-dir", type=click.Path(file_okay=False), default="runs", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def serve_cmd(port, host, runs_dir, seed):
    """Serve the HTTP JSON API consumed by the review dashboard."""
    from sage.pipeline.service import serve

    serve(runs_dir, host=host, port=port, config=PipelineConfig(seed=seed))


@main.command("export")
@click.argument("run_id")
@click.option("--runs-dir", type=click.Path(file_okay=False), default="runs", show_default=True)
def export_cmd(run_id, runs_dir):
    """Print the rendered closing summary of a completed run."""
    store = RunStore(runs_dir)
    try:
        click.echo(store.read_artifact(run_id, "summary.txt").decode("utf-8"), nl=False)
    except StoreError as exc:
        raise click.ClickException(str(exc))


if __name__ == "__main__":
    main()
