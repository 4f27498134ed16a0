"""Command line front end for deliberation and the tier benchmark."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from sage.debate.backends import ScriptedCritic
from sage.debate.benchmark import TierProposal, make_tier_dataset, run_benchmark
from sage.debate.protocol import deliberate
from sage.debate.types import (
    JUDGE,
    PROVER,
    VERIFIER,
    Citation,
    CriticAssessment,
    DebateConfig,
)


def _assessment_from_dict(role: str, record: dict) -> CriticAssessment:
    citations = tuple(
        Citation(id=c["id"], locator=c.get("locator", ""), stance=c.get("stance", "neutral"))
        for c in record.get("citations", ())
    )
    return CriticAssessment(
        role=role,
        score=float(record["score"]),
        confidence=float(record.get("confidence", 1.0)),
        claims=tuple(record.get("claims", ())),
        citations=citations,
        specious_flags=tuple(record.get("specious_flags", ())),
    )


def _load_scripted(directory: Path) -> dict:
    critics = {}
    for role, filename in ((PROVER, "prover.json"), (VERIFIER, "verifier.json"), (JUDGE, "judge.json")):
        path = directory / filename
        if not path.exists():
            raise click.ClickException(f"missing scripted critic file: {path}")
        records = json.loads(path.read_text())
        critics[role] = ScriptedCritic([_assessment_from_dict(role, r) for r in records])
    return critics


def _build_critics(spec: str) -> dict:
    if spec.startswith("scripted:"):
        return _load_scripted(Path(spec[len("scripted:"):]))
    raise click.ClickException(f"unsupported critics spec {spec!r}; use scripted:<dir>")


def _load_config(path: str | None) -> DebateConfig:
    if path is None:
        return DebateConfig()
    data = json.loads(Path(path).read_text())
    return DebateConfig(
        threshold=float(data.get("threshold", 1.0)),
        convergence=float(data.get("convergence", 0.5)),
        max_rounds=int(data.get("max_rounds", 3)),
        eta=float(data.get("eta", 0.5)),
        delta=float(data.get("delta", 2.0)),
    )


@click.group(name="debate")
def main() -> None:
    """Novelty deliberation commands."""


@main.command(name="run")
@click.option("--hypothesis", "hypothesis_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--critics", "critics_spec", required=True, help="scripted:<dir> with prover/verifier/judge.json")
@click.option("--config", "config_path", default=None, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_path", default=None, type=click.Path(dir_okay=False))
def run_command(hypothesis_path: str, critics_spec: str, config_path: str | None, out_path: str | None) -> None:
    """Deliberate one hypothesis with scripted critics and print the verdict."""
    hypothesis = json.loads(Path(hypothesis_path).read_text())
    critics = _build_critics(critics_spec)
    config = _load_config(config_path)
    verdict = deliberate(hypothesis, critics, config, hypothesis_id=str(hypothesis.get("id", "h-0")))
    payload = json.dumps(verdict.to_dict(), indent=2, sort_keys=True)
    if out_path:
        Path(out_path).write_text(payload + "\n")
        click.echo(f"wrote verdict to {out_path}")
    else:
        click.echo(payload)


def _load_dataset(path: str | None, per_tier: int, data_seed: int) -> list[TierProposal]:
    if path is None:
        return make_tier_dataset(per_tier=per_tier, seed=data_seed)
    records = json.loads(Path(path).read_text())
    return [
        TierProposal(
            id=str(r["id"]),
            category=str(r["category"]),
            true_score=float(r["true_score"]),
            lo=float(r["lo"]),
            hi=float(r["hi"]),
            cutoff=r.get("cutoff"),
            statement=str(r.get("statement", "")),
        )
        for r in records
    ]


@main.command(name="bench")
@click.option("--dataset", "dataset_path", default=None, type=click.Path(exists=True, dir_okay=False),
              help="JSON list of proposals; omitted means a generated five-tier set")
@click.option("--mode", default="full", type=click.Choice(["single", "two_critic", "no_debate", "full"]))
@click.option("--seeds", default=1, show_default=True, help="number of critic seeds to average over")
@click.option("--per-tier", default=30, show_default=True)
@click.option("--data-seed", default=0, show_default=True)
@click.option("--out", "out_path", default=None, type=click.Path(dir_okay=False))
def bench_command(dataset_path: str | None, mode: str, seeds: int, per_tier: int,
                  data_seed: int, out_path: str | None) -> None:
    """Run the tier benchmark over one or more seeds and report accuracy and gap."""
    proposals = _load_dataset(dataset_path, per_tier, data_seed)
    runs = [run_benchmark(proposals, mode, seed=s) for s in range(seeds)]
    summary = {
        "mode": mode,
        "seeds": seeds,
        "mean_accuracy": sum(r["accuracy"] for r in runs) / len(runs),
        "mean_gap": sum(r["gap"] for r in runs) / len(runs) if runs[0]["gap"] is not None else None,
        "runs": [
            {"seed": r["seed"], "accuracy": r["accuracy"], "gap": r["gap"], "per_tier_mean": r["per_tier_mean"]}
            for r in runs
        ],
    }
    payload = json.dumps(summary, indent=2, sort_keys=True)
    if out_path:
        Path(out_path).write_text(payload + "\n")
        click.echo(f"wrote benchmark summary to {out_path}")
    else:
        click.echo(payload)


if __name__ == "__main__":
    sys.exit(main())
