"""Pipeline engine: fixed stage order, checkpoint, loops, gates, persistence.

One engine executes runs strictly sequentially per run. Every stage append
is followed by an atomic snapshot plus an event-log entry carrying full
copies, so a process killed between stages resumes from the next stage
with identical final artifacts. The human checkpoint pauses the run with
status ``awaiting_review`` unless auto-approve is configured; decisions
are applied under a per-run lock with conflict detection so exactly one
concurrent decision wins.
"""

from __future__ import annotations

import hashlib
import textwrap
import time
import uuid
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Mapping, Optional

from sage import SCHEMA_VERSION
from sage.debate import JUDGE, PROVER, VERIFIER, CallableCritic, CriticAssessment, DebateConfig, deliberate
from sage.feasibility import PROBE_REGISTRY, FixtureProbe, ResourceProbeResult, assess
from sage.pipeline.backends import BackendError, make_mock_backends
from sage.pipeline.context import ContextError, ContextPolicy, allocate_context
from sage.pipeline.refine import RefineError, refine_until_novel
from sage.pipeline.sandbox import SandboxLimits
from sage.pipeline.store import RunStore
from sage.pipeline.tokens import TokenCounter, token_count
from sage.pipeline.types import (
    AWAITING_REVIEW,
    COMPLETED,
    ESCALATED,
    FAILED,
    REJECTED,
    RUNNING,
    STAGES,
    Hypothesis,
    PipelineRun,
    ReviewDecision,
    StageRecord,
    canonical_json,
    render_hypothesis_text,
)
from sage.pipeline.validation import validation_loop
from sage.registry import ToolRegistry
from sage.survival.types import load_survival_csv
from sage.survival.tools import default_registry


class PipelineError(RuntimeError):
    pass


class ConflictError(RuntimeError):
    """A review decision lost the race or arrived after the window closed."""


# stages whose execution is a single text-backend call
_TEXT_STAGES = frozenset(
    {
        "path_generation",
        "ontologist",
        "scientist",
        "hypothesis_expansion",
        "coding_instructions",
        "results_interpreter",
        "summary",
    }
)

# a small fixed two-arm cohort with a planted hazard difference, installed
# into new stores so validation plans have something real to chew on
DEMO_COHORT_CSV = "\n".join(
    ["subject_id,time,event,group"]
    + [f"h{i:02d},{t},{e},high" for i, (t, e) in enumerate(
        [(2, 1), (3, 1), (4, 1), (5, 1), (6, 1), (7, 0), (8, 1), (9, 1), (10, 1), (12, 0), (13, 1), (14, 1)]
    )]
    + [f"l{i:02d},{t},{e},low" for i, (t, e) in enumerate(
        [(14, 1), (16, 0), (18, 1), (20, 0), (22, 1), (24, 0), (26, 1), (28, 0), (30, 1), (33, 0), (36, 0), (40, 0)]
    )]
) + "\n"


def install_demo_cohort(store: RunStore) -> dict:
    path = store.data_dir() / "demo_cohort.csv"
    if not path.exists():
        path.write_text(DEMO_COHORT_CSV, encoding="utf-8")
    return {
        "demo_cohort": {
            "path": str(path),
            "groups": ["high", "low"],
            "description": "built-in two-arm cohort with a planted hazard difference",
        }
    }


def default_probes() -> dict:
    """All-found fixture probes: one hit per backing service per tag."""
    probes = {}
    for tag, services in PROBE_REGISTRY.items():
        probes[tag] = FixtureProbe(
            tag,
            [ResourceProbeResult(source=tag, found=True, detail=f"fixture hit via {svc}")
             for svc in services],
        )
    return probes


def _stable_int(*parts) -> int:
    blob = "\x1f".join(str(p) for p in parts).encode("utf-8")
    return int.from_bytes(hashlib.sha256(blob).digest()[:8], "big")


def default_deliberate(seed: int, config: DebateConfig = DebateConfig()) -> Callable:
    """Deterministic novelty deliberation built on the debate protocol.

    Critic priors cluster tightly around a statement-derived base score, so
    the disagreement trigger rarely fires and the verdict equals the prior
    mean; scripted deliberators replace this in tests that need refinement.
    """

    def _deliberate(hypothesis: Hypothesis, iteration: int):
        h = _stable_int(seed, "novelty", hypothesis.statement, iteration)
        base = 7.2 + (h % 180) / 100.0
        offsets = {PROVER: 0.3, VERIFIER: -0.3, JUDGE: 0.0}
        critics = {}
        for role, offset in offsets.items():
            score = min(10.0, max(1.0, base + offset))

            def _assess(hyp, role_arg, transcript, probe, _score=score):
                return CriticAssessment(
                    role=role_arg,
                    score=_score,
                    confidence=0.9,
                    claims=(f"{role_arg} reading of the statement",),
                    citations=(),
                    specious_flags=(),
                )

            critics[role] = CallableCritic(_assess)
        return deliberate(
            hypothesis.statement, critics, config, hypothesis_id=hypothesis.id
        )

    return _deliberate


@dataclass
class PipelineConfig:
    seed: int = 0
    auto_approve: bool = False
    novelty_threshold: float = 7.0
    max_refine_iters: int = 3
    max_feedback_iters: int = 3
    debate: DebateConfig = field(default_factory=DebateConfig)
    sandbox: SandboxLimits = field(default_factory=SandboxLimits)
    registry: Optional[ToolRegistry] = None
    probes: Optional[Any] = None
    data_bank: Optional[Mapping[str, Mapping]] = None
    deliberate: Optional[Callable] = None
    token_counter: Optional[TokenCounter] = None


class PipelineEngine:
    """Binds a store, a backend set, and a config; executes runs."""

    def __init__(self, store: RunStore, backends: Optional[Mapping[str, Callable]] = None,
                 config: Optional[PipelineConfig] = None):
        self.store = store
        self.config = config or PipelineConfig()
        self.backends = dict(backends or make_mock_backends(self.config.seed))
        self.registry = self.config.registry or default_registry()
        self.data_bank = dict(self.config.data_bank or install_demo_cohort(store))

    # ---- public entry points ------------------------------------------------

    def start(self, query: str, mode: str, run_id: Optional[str] = None) -> PipelineRun:
        run = PipelineRun(
            run_id=run_id or uuid.uuid4().hex[:12],
            query=query,
            mode=mode,
            seed=self.config.seed,
            created_at=time.time(),
        )
        self.store.create(run)
        return self.advance(run)

    def resume(self, run_id: str) -> PipelineRun:
        return self.advance(self.store.load(run_id))

    def advance(self, run: PipelineRun) -> PipelineRun:
        """Execute stages until the run pauses or reaches a terminal state."""
        try:
            while run.status == RUNNING:
                done = run.completed_stage_names()
                if len(done) == len(STAGES):
                    self._finalize(run)
                    break
                stage = STAGES[len(done)]
                if stage == "human_review":
                    if not self.config.auto_approve:
                        run.set_status(AWAITING_REVIEW)
                        self.store.save(run)
                        self.store.append_event(run.run_id, "awaiting_review", {
                            "hypothesis": run.hypothesis.to_dict() if run.hypothesis else None,
                        })
                        return run
                    decision = ReviewDecision(
                        action="approve",
                        note="auto-approved by run configuration",
                        run_id=run.run_id,
                        hypothesis_id=run.hypothesis.id if run.hypothesis else "",
                        timestamp=time.time(),
                    )
                    self._apply_decision(run, decision)
                else:
                    self._execute(run, stage)
                self.store.save(run)
        except BackendError as exc:
            run.error = str(exc)
            run.set_status(FAILED)
            self.store.save(run)
            self.store.append_event(run.run_id, "run_failed", {"error": run.error})
        except (ContextError, RefineError, ValueError) as exc:
            run.error = str(exc)
            run.set_status(FAILED)
            self.store.save(run)
            self.store.append_event(run.run_id, "run_failed", {"error": run.error})
        return run

    def apply_review(self, run_id: str, decision: ReviewDecision) -> PipelineRun:
        """Apply one review decision atomically; losers get ConflictError."""
        with self.store.lock_for(run_id):
            run = self.store.load(run_id)
            if run.status != AWAITING_REVIEW:
                raise ConflictError(
                    f"run {run_id!r} is {run.status!r}; no review is pending"
                )
            decision = replace(
                decision,
                run_id=run_id,
                hypothesis_id=run.hypothesis.id if run.hypothesis else "",
                timestamp=decision.timestamp or time.time(),
            )
            run.set_status(RUNNING)
            self._apply_decision(run, decision)
            self.store.save(run)
        if run.status == RUNNING:
            return self.advance(run)
        return run

    # ---- internals ------------------------------------------------------------

    def _policy(self, run: PipelineRun) -> ContextPolicy:
        return ContextPolicy(mode=run.mode)

    def _count(self, text: str) -> int:
        return token_count(text, self.config.token_counter)

    def _state_for(self, run: PipelineRun, sources: tuple, extra: Optional[dict] = None) -> dict:
        structured = {}
        state = {"seed": run.seed, "mode": run.mode}
        for name in sources:
            if name == "query":
                state["query"] = run.query
                continue
            record = run.latest(name)
            if record is not None:
                structured[name] = record.output
        state["sources"] = structured
        if extra:
            state.update(extra)
        return state

    def _call_backend(self, stage: str, context_text: str, state: dict) -> dict:
        backend = self.backends.get(stage)
        if backend is None:
            raise BackendError(stage, "no backend bound")
        try:
            output = backend(stage, context_text, state)
        except BackendError:
            raise
        except Exception as exc:
            raise BackendError(stage, f"{type(exc).__name__}: {exc}") from exc
        if not isinstance(output, dict):
            raise BackendError(stage, "backend returned a non-dict artifact")
        return output

    def _append_record(self, run: PipelineRun, stage: str, bundle, output: dict,
                       iteration: int, wall: float,
                       prompt_extra: int = 0, completion_extra: int = 0) -> StageRecord:
        text = output.get("text")
        completion_basis = text if isinstance(text, str) and text else canonical_json(output)
        record = StageRecord(
            name=stage,
            iteration=iteration,
            input_digest=bundle.digest,
            input_sources=bundle.sources,
            output=output,
            prompt_tokens=self._count(bundle.text) + prompt_extra,
            completion_tokens=self._count(completion_basis) + completion_extra,
            wall_time=wall,
        )
        run.stages.append(record)
        self.store.append_event(run.run_id, "stage_completed", {
            "stage": stage,
            "iteration": iteration,
            "record": record.to_dict(),
            "context_text": bundle.text,
        })
        return record

    # ---- stage execution ----------------------------------------------------

    def _execute(self, run: PipelineRun, stage: str) -> None:
        if stage in _TEXT_STAGES:
            self._run_text_stage(run, stage)
        elif stage == "novelty_critic":
            self._run_novelty(run)
        elif stage == "feasibility":
            self._run_feasibility(run)
        elif stage == "coding":
            self._run_validation(run)
        else:  # pragma: no cover - the stage table is fixed
            raise PipelineError(f"no executor for stage {stage!r}")

    def _run_text_stage(self, run: PipelineRun, stage: str) -> None:
        bundle = allocate_context(stage, run, self._policy(run))
        extra: dict = {}
        if stage == "coding_instructions":
            extra["data_bank"] = self._bank_listing()
        state = self._state_for(run, bundle.sources, extra)
        started = time.perf_counter()
        output = self._call_backend(stage, bundle.text, state)
        wall = time.perf_counter() - started
        self._append_record(run, stage, bundle, output, iteration=0, wall=wall)

        if stage == "scientist":
            fields = output.get("hypothesis") or {}
            paths = (run.latest("path_generation") or StageRecord(
                "path_generation", 0, "", (), {}, 0, 0, 0.0)).output.get("paths", [])
            run.hypothesis = Hypothesis(
                id=f"{run.run_id}-h1",
                statement=str(fields.get("statement", "")),
                population=str(fields.get("population", "")),
                variables=list(fields.get("variables", ())),
                outcome=str(fields.get("outcome", "")),
                expected_directionality=str(fields.get("expected_directionality", "")),
                validation_feasibility=str(fields.get("validation_feasibility", "")),
                provenance={"path_ids": [p.get("id") for p in paths], "stage": "scientist"},
            )
        elif stage == "hypothesis_expansion":
            self._absorb_hypothesis(run, output, stage)
        elif stage == "results_interpreter":
            score = output.get("post_hoc_feasibility")
            if score is not None:
                run.verdicts["post_hoc_feasibility"] = {"score": float(score)}

    def _absorb_hypothesis(self, run: PipelineRun, output: dict, stage: str) -> None:
        fields = output.get("hypothesis") or {}
        if run.hypothesis is None:
            raise BackendError(stage, "no hypothesis draft to expand")
        provenance = dict(run.hypothesis.provenance)
        provenance["stage"] = stage
        run.hypothesis = Hypothesis(
            id=run.hypothesis.id,
            statement=str(fields.get("statement", run.hypothesis.statement)),
            population=str(fields.get("population", run.hypothesis.population)),
            variables=list(fields.get("variables", run.hypothesis.variables)),
            outcome=str(fields.get("outcome", run.hypothesis.outcome)),
            expected_directionality=str(
                fields.get("expected_directionality", run.hypothesis.expected_directionality)
            ),
            validation_feasibility=str(
                fields.get("validation_feasibility", run.hypothesis.validation_feasibility)
            ),
            provenance=provenance,
        )

    # ---- review checkpoint -----------------------------------------------------

    def _apply_decision(self, run: PipelineRun, decision: ReviewDecision) -> None:
        bundle = allocate_context("human_review", run, self._policy(run))
        run.reviews.append(decision)
        statement = run.hypothesis.statement if run.hypothesis else ""
        if decision.action == "revise":
            statement = (decision.edited_statement or "").strip()
            self._rewrite_scientist_draft(run, statement)
        output = {
            "action": decision.action,
            "statement": statement if decision.action != "reject" else "",
            "note": decision.note,
            "text": "\n".join(
                [f"Review decision: {decision.action}"]
                + ([f"Statement: {statement}"] if decision.action != "reject" else [])
                + ([f"Note: {decision.note}"] if decision.note else [])
            ),
        }
        self._append_record(run, "human_review", bundle, output, iteration=0, wall=0.0)
        self.store.append_event(run.run_id, "review_applied", {"decision": decision.to_dict()})
        if decision.action == "reject":
            run.terminated_by = "human_review"
            run.set_status(REJECTED)

    def _rewrite_scientist_draft(self, run: PipelineRun, statement: str) -> None:
        """A revise decision replaces the draft statement that flows downstream."""
        record = run.latest("scientist")
        if record is None:
            raise ConflictError("no scientist draft exists to revise")
        artifact = dict(record.output)
        fields = dict(artifact.get("hypothesis") or {})
        fields["statement"] = statement
        artifact["hypothesis"] = fields
        artifact["text"] = render_hypothesis_text(fields)
        artifact["edited_by_review"] = True
        record.output = artifact
        if run.hypothesis is not None:
            run.hypothesis.statement = statement
        self.store.append_event(run.run_id, "draft_revised", {"artifact": artifact})

    # ---- novelty refinement ------------------------------------------------------

    def _run_novelty(self, run: PipelineRun) -> None:
        if run.hypothesis is None:
            raise BackendError("novelty_critic", "no hypothesis available to critique")
        deliberate_fn = self.config.deliberate or default_deliberate(run.seed, self.config.debate)

        def _deliberate(hypothesis: Hypothesis, iteration: int):
            bundle = allocate_context("novelty_critic", run, self._policy(run))
            started = time.perf_counter()
            verdict = deliberate_fn(hypothesis, iteration)
            wall = time.perf_counter() - started
            output = {
                "text": (
                    f"Novelty verdict: {verdict.final_score:.3f}/10 "
                    f"({verdict.terminated_reason}; rounds {verdict.rounds_used}; "
                    f"debate {'held' if verdict.debate_occurred else 'skipped'})"
                ),
                "verdict": verdict.to_dict(),
                "iteration": iteration,
            }
            self._append_record(run, "novelty_critic", bundle, output,
                                iteration=iteration, wall=wall)
            return verdict

        def _revise(hypothesis: Hypothesis, verdict, iteration: int) -> Hypothesis:
            bundle = allocate_context("hypothesis_expansion", run, self._policy(run))
            critique = (
                f"novelty {float(verdict.final_score):.2f} fell below the "
                f"{self.config.novelty_threshold:.1f} threshold; differentiate the claim"
            )
            state = self._state_for(run, bundle.sources, {
                "revision": {"iteration": iteration, "critique": critique},
            })
            output = self._call_backend("hypothesis_expansion", bundle.text, state)
            record = run.latest("hypothesis_expansion")
            previous_statement = run.hypothesis.statement if run.hypothesis else ""
            revisions = list(record.output.get("revisions", ()))
            revisions.append({
                "iteration": iteration,
                "previous_statement": previous_statement,
                "critique": critique,
                "input_digest": bundle.digest,
                "prompt_tokens": self._count(bundle.text),
                "completion_tokens": self._count(output.get("text", "") or canonical_json(output)),
            })
            output["revisions"] = revisions
            record.output = output
            record.prompt_tokens += revisions[-1]["prompt_tokens"]
            record.completion_tokens += revisions[-1]["completion_tokens"]
            self._absorb_hypothesis(run, output, "hypothesis_expansion")
            self.store.append_event(run.run_id, "hypothesis_revised", {
                "iteration": iteration,
                "artifact": output,
            })
            return run.hypothesis

        outcome = refine_until_novel(
            run.hypothesis,
            _deliberate,
            threshold=self.config.novelty_threshold,
            max_iters=self.config.max_refine_iters,
            revise=_revise,
        )
        run.hypothesis = outcome.hypothesis
        run.verdicts["novelty"] = {
            **outcome.verdict.to_dict(),
            "iterations": outcome.iterations,
            "below_threshold": outcome.below_threshold,
            "score_history": list(outcome.score_history),
        }
        if outcome.below_threshold and "novelty_below_threshold" not in run.flags:
            run.flags.append("novelty_below_threshold")

    # ---- feasibility gate ------------------------------------------------------

    def _run_feasibility(self, run: PipelineRun) -> None:
        if run.hypothesis is None:
            raise BackendError("feasibility", "no hypothesis available to assess")
        try:
            run.hypothesis.require_complete()
        except ValueError as exc:
            raise BackendError("feasibility", str(exc)) from exc
        bundle = allocate_context("feasibility", run, self._policy(run))
        probes = self.config.probes if self.config.probes is not None else default_probes()
        started = time.perf_counter()
        assessment = assess(run.hypothesis.statement, probes)
        wall = time.perf_counter() - started
        payload = assessment.to_dict()
        lines = [
            f"Feasibility verdict: {assessment.verdict} "
            f"(weighted total {assessment.weighted_total:.2f}/10)"
        ]
        for name, value in assessment.sub_scores().items():
            lines.append(f"- {name}: {value:.1f}")
        output = {"text": "\n".join(lines), "assessment": payload}
        self._append_record(run, "feasibility", bundle, output, iteration=0, wall=wall)
        run.verdicts["gate_feasibility"] = payload
        if assessment.verdict == "infeasible":
            run.terminated_by = "feasibility_gate"
            run.set_status(REJECTED)
            self.store.append_event(run.run_id, "feasibility_gate_terminated", {
                "verdict": payload,
            })
        elif assessment.verdict == "conditionally_feasible":
            if "conditionally_feasible" not in run.flags:
                run.flags.append("conditionally_feasible")
            self.store.append_event(run.run_id, "feasibility_flagged", {"verdict": payload})

    # ---- sandboxed validation -----------------------------------------------------

    def _bank_listing(self) -> list:
        listing = []
        for name in sorted(self.data_bank):
            entry = dict(self.data_bank[name])
            if "groups" not in entry:
                try:
                    dataset = load_survival_csv(entry["path"])
                    entry["groups"] = sorted({r.group for r in dataset.records})
                except (OSError, ValueError):
                    entry["groups"] = []
            listing.append({"name": name, **entry})
        return listing

    def _run_validation(self, run: PipelineRun) -> None:
        record = run.latest("coding_instructions")
        plan = (record.output if record else {}).get("plan")
        if plan is None:
            raise BackendError("coding", "no validation plan was produced upstream")
        bundle = allocate_context("coding", run, self._policy(run))

        reviser = None
        if "revise_plan" in self.backends:
            def reviser(current_plan, error):
                state = self._state_for(run, bundle.sources, {
                    "plan": current_plan,
                    "error": error,
                })
                output = self._call_backend("revise_plan", bundle.text, state)
                return output.get("plan", current_plan)

        scratch = self.store.run_dir(run.run_id) / "scratch"
        scratch.mkdir(exist_ok=True)
        started = time.perf_counter()
        result = validation_loop(
            plan,
            self.registry,
            data_bank=self.data_bank,
            limits=self.config.sandbox,
            revise=reviser,
            max_feedback_iters=self.config.max_feedback_iters,
            artifact_writer=lambda name, content: self.store.write_artifact(
                run.run_id, name, content
            ),
            scratch=str(scratch),
        )
        wall = time.perf_counter() - started
        output = {
            "text": self._validation_text(result),
            **result.to_dict(),
        }
        self._append_record(run, "coding", bundle, output, iteration=0, wall=wall)
        run.validation = result.to_dict()
        if result.status == "escalated":
            run.set_status(ESCALATED)
            self.store.append_event(run.run_id, "validation_escalated", {
                "attempts": result.attempts,
            })
        elif result.status == "failed":
            run.error = (result.violation or {}).get("message", "sandbox violation")
            run.set_status(FAILED)
            self.store.append_event(run.run_id, "validation_failed", {
                "violation": result.violation,
            })

    @staticmethod
    def _validation_text(result) -> str:
        if result.status != "ok":
            return f"Validation {result.status} after {len(result.attempts)} attempt(s)."
        lines = [f"Validation completed in {len(result.attempts)} attempt(s):"]
        for entry in result.results:
            tool = entry["tool"]
            payload = entry["result"]
            if tool == "kaplan_meier":
                times = payload.get("times", [])
                survival = payload.get("survival", [])
                tail = f"{survival[-1]:.3f}" if survival else "n/a"
                lines.append(
                    f"- kaplan_meier[{payload.get('group')}]: {len(times)} event times, final S={tail}"
                )
            elif tool == "logrank_test":
                lines.append(
                    f"- logrank_test: chi_square={payload.get('chi_square'):.4f} "
                    f"p_value={payload.get('p_value'):.4g}"
                )
            else:
                lines.append(f"- {tool}: artifact {entry['artifact']}")
        return "\n".join(lines)

    # ---- completion --------------------------------------------------------------

    def _finalize(self, run: PipelineRun) -> None:
        run.set_status(COMPLETED)
        summary = export_run_summary(run)
        self.store.write_artifact(run.run_id, "run_summary.json", canonical_json(summary) + "\n")
        self.store.write_artifact(run.run_id, "summary.txt", render_summary_text(summary))
        self.store.save(run)
        self.store.append_event(run.run_id, "run_completed", {"summary": summary})


def export_run_summary(run: PipelineRun) -> dict:
    """Deterministic closing summary: everything but clocks and wall times."""
    per_stage: dict = {}
    for record in run.stages:
        slot = per_stage.setdefault(record.name, {"prompt": 0, "completion": 0, "iterations": 0})
        slot["prompt"] += record.prompt_tokens
        slot["completion"] += record.completion_tokens
        slot["iterations"] += 1
    summary_record = run.latest("summary")
    return {
        "schema_version": SCHEMA_VERSION,
        "run_id": run.run_id,
        "query": run.query,
        "mode": run.mode,
        "status": run.status,
        "hypothesis": run.hypothesis.to_dict() if run.hypothesis else None,
        "novelty": run.verdicts.get("novelty"),
        "gate_feasibility": run.verdicts.get("gate_feasibility"),
        "post_hoc_feasibility": run.verdicts.get("post_hoc_feasibility"),
        "summary": (summary_record.output.get("summary") if summary_record else None),
        "references": (
            (run.latest("hypothesis_expansion") or StageRecord("x", 0, "", (), {}, 0, 0, 0.0))
            .output.get("references", [])
        ),
        "flags": list(run.flags),
        "terminated_by": run.terminated_by,
        "reviews": [
            {"action": d.action, "edited_statement": d.edited_statement, "note": d.note}
            for d in run.reviews
        ],
        "tokens": {
            "prompt_total": run.prompt_token_total,
            "completion_total": run.completion_token_total,
            "per_stage": per_stage,
        },
        "stages": [
            {
                "name": r.name,
                "iteration": r.iteration,
                "input_sources": list(r.input_sources),
                "input_digest": r.input_digest,
            }
            for r in run.stages
        ],
        "validation": {
            "status": run.validation.get("status"),
            "artifacts": run.validation.get("artifacts", []),
        },
    }


def render_summary_text(summary: Mapping) -> str:
    """Human-readable export mirroring the structured summary."""
    hyp = summary.get("hypothesis") or {}
    novelty = summary.get("novelty") or {}
    gate = summary.get("gate_feasibility") or {}
    post_hoc = summary.get("post_hoc_feasibility") or {}
    lines = [
        f"Run {summary['run_id']} [{summary['mode']}] - {summary['status']}",
        f"Query: {summary['query']}",
        "",
        "Hypothesis",
        textwrap.indent(render_hypothesis_text(hyp), "  "),
        "",
        f"Novelty score: {novelty.get('final_score')} "
        f"(iterations {novelty.get('iterations')}, "
        f"below_threshold {novelty.get('below_threshold')})",
        f"Gate feasibility: {gate.get('weighted_total')} -> {gate.get('verdict')}",
        f"Post-hoc feasibility: {post_hoc.get('score')}",
        f"Validation: {summary.get('validation', {}).get('status')}",
        "References: " + ", ".join(summary.get("references") or []),
    ]
    flags = summary.get("flags") or []
    if flags:
        lines.append("Flags: " + ", ".join(flags))
    return "\n".join(lines) + "\n"


def run_pipeline(query: str, mode: str, backends: Optional[Mapping[str, Callable]] = None,
                 config: Optional[PipelineConfig] = None, store: Optional[RunStore] = None,
                 run_id: Optional[str] = None) -> PipelineRun:
    """Convenience wrapper: one engine, one run."""
    import tempfile

    if store is None:
        store = RunStore(tempfile.mkdtemp(prefix="sage-runs-"))
    engine = PipelineEngine(store, backends, config)
    return engine.start(query, mode, run_id=run_id)
