"""Sequential agent pipeline: orchestration, persistence, service API."""

from sage.pipeline.backends import BackendError, StageBackend, make_mock_backends
from sage.pipeline.compare import compare_modes, report_signature
from sage.pipeline.context import (
    GP_SOURCES,
    ContextBundle,
    ContextError,
    ContextPolicy,
    allocate_context,
)
from sage.pipeline.refine import RefineError, RefineOutcome, refine_until_novel
from sage.pipeline.runner import (
    ConflictError,
    PipelineConfig,
    PipelineEngine,
    PipelineError,
    default_deliberate,
    default_probes,
    export_run_summary,
    install_demo_cohort,
    render_summary_text,
    run_pipeline,
)
from sage.pipeline.sandbox import SandboxLimits, SandboxViolation, ToolError, run_sandboxed
from sage.pipeline.store import RunStore, StoreError
from sage.pipeline.tokens import default_counter, token_count
from sage.pipeline.types import (
    AWAITING_REVIEW,
    COMPLETED,
    ESCALATED,
    FAILED,
    MODES,
    REJECTED,
    RUNNING,
    STAGES,
    STATUSES,
    TEMPLATE_FIELDS,
    TERMINAL_STATUSES,
    Hypothesis,
    PipelineRun,
    ReviewDecision,
    StageRecord,
    StateError,
    assert_transition,
    canonical_json,
    render_hypothesis_text,
)
from sage.pipeline.validation import (
    PlanError,
    ValidationResult,
    normalize_plan,
    resolve_data,
    validation_loop,
)

__all__ = [
    "AWAITING_REVIEW",
    "BackendError",
    "COMPLETED",
    "ConflictError",
    "ContextBundle",
    "ContextError",
    "ContextPolicy",
    "ESCALATED",
    "FAILED",
    "GP_SOURCES",
    "Hypothesis",
    "MODES",
    "PipelineConfig",
    "PipelineEngine",
    "PipelineError",
    "PipelineRun",
    "PlanError",
    "REJECTED",
    "RUNNING",
    "RefineError",
    "RefineOutcome",
    "ReviewDecision",
    "RunStore",
    "STAGES",
    "STATUSES",
    "SandboxLimits",
    "SandboxViolation",
    "StageBackend",
    "StageRecord",
    "StateError",
    "StoreError",
    "TEMPLATE_FIELDS",
    "TERMINAL_STATUSES",
    "ToolError",
    "ValidationResult",
    "allocate_context",
    "assert_transition",
    "canonical_json",
    "compare_modes",
    "default_counter",
    "default_deliberate",
    "default_probes",
    "export_run_summary",
    "install_demo_cohort",
    "make_mock_backends",
    "normalize_plan",
    "refine_until_novel",
    "render_hypothesis_text",
    "render_summary_text",
    "report_signature",
    "resolve_data",
    "run_pipeline",
    "run_sandboxed",
    "token_count",
    "validation_loop",
]
