"""Domain types for the sequential agent pipeline.

A run walks a fixed eleven-stage order, pausing at the human review
checkpoint, and persists one record per executed stage (plus one record per
iteration of the novelty-refinement loop). Statuses form a small state
machine whose only cycles pass through ``awaiting_review``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional, Sequence

STAGES = (
    "path_generation",
    "ontologist",
    "scientist",
    "human_review",
    "hypothesis_expansion",
    "novelty_critic",
    "feasibility",
    "coding_instructions",
    "coding",
    "results_interpreter",
    "summary",
)

MODES = ("gp", "cp")

# the five structured fields every hypothesis must carry before it may
# enter the feasibility or validation stages
TEMPLATE_FIELDS = (
    "population",
    "variables",
    "outcome",
    "expected_directionality",
    "validation_feasibility",
)

RUNNING = "running"
AWAITING_REVIEW = "awaiting_review"
COMPLETED = "completed"
FAILED = "failed"
ESCALATED = "escalated"
REJECTED = "rejected"

STATUSES = (RUNNING, AWAITING_REVIEW, COMPLETED, FAILED, ESCALATED, REJECTED)
TERMINAL_STATUSES = frozenset({COMPLETED, FAILED, ESCALATED, REJECTED})

_TRANSITIONS = {
    RUNNING: frozenset({AWAITING_REVIEW, COMPLETED, FAILED, ESCALATED, REJECTED}),
    AWAITING_REVIEW: frozenset({RUNNING, REJECTED, FAILED}),
}

REVIEW_ACTIONS = ("approve", "revise", "reject")


class StateError(RuntimeError):
    """An illegal run-status transition."""


def assert_transition(old: str, new: str) -> None:
    if old not in STATUSES or new not in STATUSES:
        raise StateError(f"unknown run status in transition {old!r} -> {new!r}")
    if new not in _TRANSITIONS.get(old, frozenset()):
        raise StateError(f"illegal run-status transition {old!r} -> {new!r}")


def canonical_json(payload: Any) -> str:
    """Stable JSON encoding used for digests and byte-comparable artifacts."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


@dataclass
class Hypothesis:
    """A structured hypothesis with the five template fields and provenance."""

    id: str
    statement: str
    population: str = ""
    variables: list = field(default_factory=list)
    outcome: str = ""
    expected_directionality: str = ""
    validation_feasibility: str = ""
    provenance: dict = field(default_factory=dict)

    def missing_template_fields(self) -> list:
        missing = []
        for name in TEMPLATE_FIELDS:
            value = getattr(self, name)
            if isinstance(value, str):
                if not value.strip():
                    missing.append(name)
            elif not value:
                missing.append(name)
        return missing

    def require_complete(self) -> None:
        """All five template fields must be non-empty past the review gate."""
        missing = self.missing_template_fields()
        if missing:
            raise ValueError(
                "hypothesis template incomplete; missing: " + ", ".join(missing)
            )

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "statement": self.statement,
            "population": self.population,
            "variables": list(self.variables),
            "outcome": self.outcome,
            "expected_directionality": self.expected_directionality,
            "validation_feasibility": self.validation_feasibility,
            "provenance": dict(self.provenance),
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "Hypothesis":
        return cls(
            id=str(data.get("id", "")),
            statement=str(data.get("statement", "")),
            population=str(data.get("population", "")),
            variables=list(data.get("variables", ())),
            outcome=str(data.get("outcome", "")),
            expected_directionality=str(data.get("expected_directionality", "")),
            validation_feasibility=str(data.get("validation_feasibility", "")),
            provenance=dict(data.get("provenance", {})),
        )


def render_hypothesis_text(fields: Mapping) -> str:
    """Render a hypothesis mapping into the canonical narrative block.

    Empty fields are omitted so early drafts render cleanly; the statement
    line always appears first. Context bundles embed this rendering, which
    is what makes reviewer edits visible verbatim downstream.
    """
    lines = [f"Hypothesis: {fields.get('statement', '')}".rstrip()]
    labels = (
        ("population", "Population"),
        ("variables", "Variables"),
        ("outcome", "Outcome"),
        ("expected_directionality", "Expected directionality"),
        ("validation_feasibility", "Validation feasibility"),
    )
    for key, label in labels:
        value = fields.get(key)
        if isinstance(value, (list, tuple)):
            value = ", ".join(str(v) for v in value)
        if value:
            lines.append(f"{label}: {value}")
    return "\n".join(lines)


@dataclass
class StageRecord:
    """One executed stage (or one iteration of a looping stage)."""

    name: str
    iteration: int
    input_digest: str
    input_sources: tuple
    output: dict
    prompt_tokens: int
    completion_tokens: int
    wall_time: float

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "iteration": self.iteration,
            "input_digest": self.input_digest,
            "input_sources": list(self.input_sources),
            "output": self.output,
            "prompt_tokens": self.prompt_tokens,
            "completion_tokens": self.completion_tokens,
            "wall_time": self.wall_time,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "StageRecord":
        return cls(
            name=str(data["name"]),
            iteration=int(data.get("iteration", 0)),
            input_digest=str(data.get("input_digest", "")),
            input_sources=tuple(data.get("input_sources", ())),
            output=dict(data.get("output", {})),
            prompt_tokens=int(data.get("prompt_tokens", 0)),
            completion_tokens=int(data.get("completion_tokens", 0)),
            wall_time=float(data.get("wall_time", 0.0)),
        )


@dataclass(frozen=True)
class ReviewDecision:
    """An expert decision at the checkpoint. Decisions are append-only."""

    action: str
    edited_statement: Optional[str] = None
    note: str = ""
    run_id: str = ""
    hypothesis_id: str = ""
    timestamp: float = 0.0

    def __post_init__(self):
        if self.action not in REVIEW_ACTIONS:
            raise ValueError(
                f"unknown review action {self.action!r}; expected one of {REVIEW_ACTIONS}"
            )
        if self.action == "revise":
            if not (self.edited_statement or "").strip():
                raise ValueError("revise decisions require an edited_statement")

    def to_dict(self) -> dict:
        return {
            "action": self.action,
            "edited_statement": self.edited_statement,
            "note": self.note,
            "run_id": self.run_id,
            "hypothesis_id": self.hypothesis_id,
            "timestamp": self.timestamp,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "ReviewDecision":
        return cls(
            action=str(data["action"]),
            edited_statement=data.get("edited_statement"),
            note=str(data.get("note", "")),
            run_id=str(data.get("run_id", "")),
            hypothesis_id=str(data.get("hypothesis_id", "")),
            timestamp=float(data.get("timestamp", 0.0)),
        )


@dataclass
class PipelineRun:
    """Full state of one pipeline run; the persisted snapshot mirrors this."""

    run_id: str
    query: str
    mode: str
    seed: int = 0
    created_at: float = 0.0
    status: str = RUNNING
    stages: list = field(default_factory=list)
    reviews: list = field(default_factory=list)
    verdicts: dict = field(default_factory=dict)
    validation: dict = field(default_factory=dict)
    hypothesis: Optional[Hypothesis] = None
    flags: list = field(default_factory=list)
    terminated_by: Optional[str] = None
    error: Optional[str] = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; expected one of {MODES}")

    # ---- record access -------------------------------------------------

    def records_for(self, stage: str) -> list:
        return [r for r in self.stages if r.name == stage]

    def latest(self, stage: str) -> Optional[StageRecord]:
        found = self.records_for(stage)
        return found[-1] if found else None

    def completed_stage_names(self) -> list:
        """Distinct executed stages, in first-execution order."""
        seen: list = []
        for record in self.stages:
            if record.name not in seen:
                seen.append(record.name)
        return seen

    # ---- token accounting ----------------------------------------------

    @property
    def prompt_token_total(self) -> int:
        return sum(r.prompt_tokens for r in self.stages)

    @property
    def completion_token_total(self) -> int:
        return sum(r.completion_tokens for r in self.stages)

    # ---- state machine ---------------------------------------------------

    def set_status(self, new: str) -> None:
        if new == self.status:
            return
        assert_transition(self.status, new)
        self.status = new

    # ---- serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "run_id": self.run_id,
            "query": self.query,
            "mode": self.mode,
            "seed": self.seed,
            "created_at": self.created_at,
            "status": self.status,
            "stages": [r.to_dict() for r in self.stages],
            "reviews": [d.to_dict() for d in self.reviews],
            "verdicts": self.verdicts,
            "validation": self.validation,
            "hypothesis": self.hypothesis.to_dict() if self.hypothesis else None,
            "flags": list(self.flags),
            "terminated_by": self.terminated_by,
            "error": self.error,
            "prompt_token_total": self.prompt_token_total,
            "completion_token_total": self.completion_token_total,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "PipelineRun":
        run = cls(
            run_id=str(data["run_id"]),
            query=str(data["query"]),
            mode=str(data["mode"]),
            seed=int(data.get("seed", 0)),
            created_at=float(data.get("created_at", 0.0)),
        )
        run.status = str(data.get("status", RUNNING))
        run.stages = [StageRecord.from_dict(r) for r in data.get("stages", ())]
        run.reviews = [ReviewDecision.from_dict(d) for d in data.get("reviews", ())]
        run.verdicts = dict(data.get("verdicts", {}))
        run.validation = dict(data.get("validation", {}))
        hyp = data.get("hypothesis")
        run.hypothesis = Hypothesis.from_dict(hyp) if hyp else None
        run.flags = list(data.get("flags", ()))
        run.terminated_by = data.get("terminated_by")
        run.error = data.get("error")
        return run

    def brief(self) -> dict:
        """Compact listing entry for indexes and the run-list endpoint."""
        return {
            "run_id": self.run_id,
            "query": self.query,
            "mode": self.mode,
            "status": self.status,
            "created_at": self.created_at,
            "stages_completed": len(self.completed_stage_names()),
            "prompt_token_total": self.prompt_token_total,
            "completion_token_total": self.completion_token_total,
        }
