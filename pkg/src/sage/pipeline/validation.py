"""Bounded validation loop: normalize the plan, resolve data, execute tools.

The loop makes up to N attempts. Each attempt normalizes the current plan
against the tool registry, resolves dataset references from the data-bank
manifest (attaching provenance), and executes every step inside the
sandbox. A tool or plan error consumes one attempt and triggers one
plan-revision feedback call when a reviser is bound; after N failed
attempts the case is escalated. A sandbox violation fails the run
immediately with the violation on record.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Mapping, Optional, Sequence

from sage.pipeline.sandbox import SandboxLimits, SandboxViolation, ToolError, run_sandboxed
from sage.pipeline.types import canonical_json
from sage.registry import ToolRegistry
from sage.survival.km import KMCurve, km_step_table
from sage.survival.types import load_survival_csv

ArtifactWriter = Callable[[str, str], None]
PlanReviser = Callable[[Any, str], Any]


class PlanError(RuntimeError):
    """The plan cannot be executed as written; eligible for revision."""


@dataclass(frozen=True)
class PlanStep:
    tool: str
    kwargs: Mapping[str, Any]


@dataclass
class ValidationResult:
    status: str  # ok | escalated | failed
    attempts: list = field(default_factory=list)
    artifacts: list = field(default_factory=list)
    results: list = field(default_factory=list)
    provenance: list = field(default_factory=list)
    violation: Optional[dict] = None

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "attempts": self.attempts,
            "artifacts": list(self.artifacts),
            "results": self.results,
            "provenance": self.provenance,
            "violation": self.violation,
        }


def normalize_plan(plan: Any, registry: ToolRegistry) -> list:
    """Task step: coerce a plan artifact into validated PlanSteps."""
    if isinstance(plan, Mapping):
        raw_steps = plan.get("steps")
    else:
        raw_steps = plan
    if not isinstance(raw_steps, Sequence) or isinstance(raw_steps, (str, bytes)):
        raise PlanError("plan has no step list")
    if not raw_steps:
        raise PlanError("plan contains no steps")
    steps = []
    for i, raw in enumerate(raw_steps):
        if not isinstance(raw, Mapping) or "tool" not in raw:
            raise PlanError(f"step {i} is not a tool invocation mapping")
        tool = str(raw["tool"])
        try:
            registry.resolve(tool)
        except KeyError as exc:
            raise PlanError(f"step {i}: {exc.args[0]}") from None
        kwargs = raw.get("kwargs", {})
        if not isinstance(kwargs, Mapping):
            raise PlanError(f"step {i}: kwargs must be a mapping")
        steps.append(PlanStep(tool=tool, kwargs=dict(kwargs)))
    return steps


def resolve_data(
    kwargs: Mapping[str, Any], data_bank: Optional[Mapping[str, Mapping]]
) -> tuple:
    """Data step: swap dataset references for records, with provenance."""
    out = dict(kwargs)
    name = out.pop("dataset", None)
    if name is None:
        return out, None
    if not data_bank or name not in data_bank:
        known = sorted(data_bank) if data_bank else []
        raise PlanError(f"unknown dataset {name!r}; known datasets: {known}")
    path = Path(data_bank[name]["path"])
    try:
        dataset = load_survival_csv(path)
    except (OSError, ValueError) as exc:
        raise PlanError(f"dataset {name!r} failed to load: {exc}") from exc
    out["records"] = [
        {"subject_id": r.subject_id, "time": r.time, "event": r.event, "group": r.group}
        for r in dataset.records
    ]
    wanted = out.get("covariates")
    if isinstance(wanted, (list, tuple)):
        missing = [c for c in wanted if c not in dataset.covariates]
        if missing:
            raise PlanError(f"dataset {name!r} lacks covariates: {missing}")
        out["covariates"] = {c: list(dataset.covariates[c]) for c in wanted}
    provenance = {
        "dataset": name,
        "path": str(path),
        "n_records": len(out["records"]),
        "sha256": hashlib.sha256(path.read_bytes()).hexdigest(),
    }
    return out, provenance


def _step_limits(registry: ToolRegistry, tool: str, limits: SandboxLimits) -> SandboxLimits:
    bounds = registry.resolve(tool).resource_bounds
    return SandboxLimits(
        timeout_s=min(limits.timeout_s, float(bounds.get("max_seconds", limits.timeout_s))),
        memory_mb=min(limits.memory_mb, int(bounds.get("max_memory_mb", limits.memory_mb))),
        allow_network=limits.allow_network,
    )


def validation_loop(
    plan: Any,
    registry: ToolRegistry,
    *,
    data_bank: Optional[Mapping[str, Mapping]] = None,
    limits: SandboxLimits = SandboxLimits(),
    revise: Optional[PlanReviser] = None,
    max_feedback_iters: int = 3,
    artifact_writer: Optional[ArtifactWriter] = None,
    scratch: Optional[str] = None,
) -> ValidationResult:
    if max_feedback_iters < 1:
        raise ValueError("max_feedback_iters must be at least 1")
    attempts = []
    current = plan
    for attempt in range(max_feedback_iters):
        log = {
            "iteration": attempt,
            "plan_digest": hashlib.sha256(canonical_json(current).encode()).hexdigest(),
        }
        try:
            steps = normalize_plan(current, registry)
            artifacts, results, provenance = [], [], []
            for i, step in enumerate(steps):
                kwargs, prov = resolve_data(step.kwargs, data_bank)
                if prov:
                    provenance.append({"step": i, "tool": step.tool, **prov})
                out = run_sandboxed(
                    registry.invoke,
                    (step.tool,),
                    kwargs,
                    limits=_step_limits(registry, step.tool, limits),
                    scratch=scratch,
                )
                name = f"validation_{i:02d}_{step.tool}.json"
                if artifact_writer:
                    artifact_writer(name, canonical_json(out) + "\n")
                artifacts.append(name)
                if registry.resolve(step.tool).name == "kaplan_meier" and artifact_writer:
                    # the step table is the human-readable artifact reviewers read
                    curve = KMCurve(**out)
                    safe = re.sub(r"[^A-Za-z0-9._-]+", "_", str(curve.group))
                    table_name = f"validation_{i:02d}_km_{safe}.txt"
                    artifact_writer(table_name, km_step_table(curve))
                    artifacts.append(table_name)
                results.append({"step": i, "tool": step.tool, "artifact": name, "result": out})
            log["status"] = "ok"
            log["artifacts"] = list(artifacts)
            attempts.append(log)
            return ValidationResult(
                status="ok",
                attempts=attempts,
                artifacts=artifacts,
                results=results,
                provenance=provenance,
            )
        except SandboxViolation as violation:
            log["status"] = "violation"
            log["violation"] = violation.record()
            attempts.append(log)
            return ValidationResult(
                status="failed", attempts=attempts, violation=violation.record()
            )
        except (PlanError, ToolError) as exc:
            log["status"] = "error"
            log["error"] = str(exc)
            if revise is not None and attempt + 1 < max_feedback_iters:
                try:
                    current = revise(current, str(exc))
                    log["revised"] = True
                except Exception as rexc:
                    log["revise_error"] = str(rexc)
            attempts.append(log)
    return ValidationResult(status="escalated", attempts=attempts)
