"""Command line front end for the survival tools."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from sage.survival.cox import CoxConfig, cox_ph
from sage.survival.km import export_km_csv, kaplan_meier
from sage.survival.logrank import logrank_test
from sage.survival.plots import km_plot
from sage.survival.stratify import stratify_joint
from sage.survival.types import load_survival_csv


@click.group(name="survival")
def main() -> None:
    """Survival analysis commands."""


@main.command(name="km")
@click.option("--data", "data_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--group", default=None, help="fit one group; default fits each group present")
@click.option("--out", "out_dir", default=".", type=click.Path(file_okay=False))
@click.option("--svg/--no-svg", default=True, show_default=True)
def km_command(data_path: str, group: str | None, out_dir: str, svg: bool) -> None:
    """Estimate survival curves and write step tables (and one plot)."""
    dataset = load_survival_csv(data_path)
    groups = [group] if group else dataset.groups()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    curves = {}
    for label in groups:
        curve = kaplan_meier(dataset.records, group=label)
        curves[label] = curve
        table_path = out / f"km_{label.replace('/', '_')}.csv"
        export_km_csv(curve, table_path)
        click.echo(f"wrote {table_path}")
    if svg:
        plot_path = out / "km_curves.svg"
        km_plot(curves, plot_path)
        click.echo(f"wrote {plot_path}")


@main.command(name="logrank")
@click.option("--data", "data_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--groups", "groups_text", required=True, help="two labels, comma separated")
def logrank_command(data_path: str, groups_text: str) -> None:
    """Two-group log-rank test."""
    labels = [g.strip() for g in groups_text.split(",") if g.strip()]
    if len(labels) != 2:
        raise click.ClickException(f"need exactly two group labels, got {labels}")
    dataset = load_survival_csv(data_path)
    result = logrank_test(dataset.records, (labels[0], labels[1]))
    click.echo(json.dumps(result.to_dict(), indent=2, sort_keys=True))


@main.command(name="cox")
@click.option("--data", "data_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--covariates", "covariates_text", required=True,
              help="covariate column names, comma separated")
@click.option("--tol", default=1e-8, show_default=True)
@click.option("--max-iter", default=50, show_default=True)
def cox_command(data_path: str, covariates_text: str, tol: float, max_iter: int) -> None:
    """Cox proportional hazards over CSV covariate columns."""
    names = [c.strip() for c in covariates_text.split(",") if c.strip()]
    dataset = load_survival_csv(data_path)
    missing = [n for n in names if n not in dataset.covariates]
    if missing:
        raise click.ClickException(f"covariate columns not in CSV: {', '.join(missing)}")
    covariates = {n: dataset.covariates[n] for n in names}
    result = cox_ph(dataset.records, covariates, CoxConfig(tol=tol, max_iter=max_iter))
    click.echo(json.dumps(result.to_dict(), indent=2, sort_keys=True))


@main.command(name="stratify")
@click.option("--markers", "markers_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="CSV with subject_id and two marker columns")
@click.option("--marker-a", required=True)
@click.option("--marker-b", required=True)
@click.option("--rule", default="median", type=click.Choice(["median", "quartile", "fixed"]),
              show_default=True)
@click.option("--threshold-a", default=None, type=float)
@click.option("--threshold-b", default=None, type=float)
@click.option("--contrast", default=None)
def stratify_command(markers_path: str, marker_a: str, marker_b: str, rule: str,
                     threshold_a: float | None, threshold_b: float | None,
                     contrast: str | None) -> None:
    """Assign subjects to joint high/low groups from a marker CSV."""
    import csv

    values_a: dict[str, float] = {}
    values_b: dict[str, float] = {}
    with open(markers_path, newline="") as fh:
        for row in csv.DictReader(fh):
            subject = row["subject_id"]
            values_a[subject] = float(row[marker_a])
            values_b[subject] = float(row[marker_b])
    result = stratify_joint(values_a, values_b, rule=rule,
                            threshold_a=threshold_a, threshold_b=threshold_b,
                            marker_a_name=marker_a, marker_b_name=marker_b,
                            contrast=contrast)
    click.echo(json.dumps(result.to_dict(), indent=2, sort_keys=True))


if __name__ == "__main__":
    sys.exit(main())
