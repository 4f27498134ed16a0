"""Command line front end for feasibility assessment."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from sage.feasibility.core import (
    DEFAULT_THRESHOLDS,
    DEFAULT_WEIGHTS,
    FeasibilityWeights,
    assess,
)
from sage.feasibility.probes import DEFAULT_RUBRIC, load_probe_fixtures, rubric_from_dict


@click.group(name="feasibility")
def main() -> None:
    """Feasibility assessment commands."""


@main.command(name="assess")
@click.option("--hypothesis", "hypothesis_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--probes", "probes_dir", required=True, type=click.Path(exists=True, file_okay=False),
              help="directory of <source>.json fixture files")
@click.option("--rubric", "rubric_path", default=None, type=click.Path(exists=True, dir_okay=False))
@click.option("--weights", "weights_path", default=None, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_path", default=None, type=click.Path(dir_okay=False))
def assess_command(hypothesis_path: str, probes_dir: str, rubric_path: str | None,
                   weights_path: str | None, out_path: str | None) -> None:
    """Assess one hypothesis against probe fixtures and print the verdict."""
    hypothesis = json.loads(Path(hypothesis_path).read_text())
    probes = load_probe_fixtures(probes_dir)
    rubric = DEFAULT_RUBRIC
    if rubric_path:
        rubric = rubric_from_dict(json.loads(Path(rubric_path).read_text()))
    weights = DEFAULT_WEIGHTS
    if weights_path:
        weights = FeasibilityWeights(**json.loads(Path(weights_path).read_text()))
    result = assess(hypothesis, probes, rubric=rubric, weights=weights,
                    thresholds=DEFAULT_THRESHOLDS)
    payload = json.dumps(result.to_dict(), indent=2, sort_keys=True)
    if out_path:
        Path(out_path).write_text(payload + "\n")
        click.echo(f"wrote assessment to {out_path}")
    else:
        click.echo(payload)


if __name__ == "__main__":
    sys.exit(main())
