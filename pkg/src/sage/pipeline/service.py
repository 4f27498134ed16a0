"""HTTP JSON API over the pipeline engine.

Every response, success or error, carries ``schema_version`` so clients
can detect contract drift. Review decisions go through the engine's
locked apply path: double submits and decisions on settled runs come back
as 409 conflicts. Artifacts are served inside a JSON envelope with a
media-type hint (all run artifacts are text-based).
"""

from __future__ import annotations

from typing import Callable, Mapping, Optional

from fastapi import Body, FastAPI
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

from sage import SCHEMA_VERSION
from sage.pipeline.runner import ConflictError, PipelineConfig, PipelineEngine
from sage.pipeline.store import RunStore, StoreError
from sage.pipeline.types import AWAITING_REVIEW, MODES, STAGES, ReviewDecision

_MEDIA_TYPES = {
    ".json": "application/json",
    ".svg": "image/svg+xml",
    ".csv": "text/csv",
    ".txt": "text/plain",
}


def _ok(payload: dict, status_code: int = 200) -> JSONResponse:
    return JSONResponse({"schema_version": SCHEMA_VERSION, **payload}, status_code=status_code)


def _err(status_code: int, message: str) -> JSONResponse:
    return JSONResponse(
        {"schema_version": SCHEMA_VERSION, "error": message}, status_code=status_code
    )


def make_app(
    store: RunStore,
    backends: Optional[Mapping[str, Callable]] = None,
    config: Optional[PipelineConfig] = None,
) -> FastAPI:
    engine = PipelineEngine(store, backends, config or PipelineConfig())
    app = FastAPI(title="sage pipeline service", version=str(SCHEMA_VERSION))

    @app.exception_handler(RequestValidationError)
    async def _on_validation(request, exc):  # noqa: ANN001
        errors = exc.errors()
        message = errors[0].get("msg", "malformed request body") if errors else "malformed request body"
        return _err(400, f"invalid request: {message}")

    @app.exception_handler(StarletteHTTPException)
    async def _on_http(request, exc):  # noqa: ANN001
        return _err(exc.status_code, str(exc.detail))

    @app.post("/runs")
    def create_run(payload: dict = Body(...)):
        query = payload.get("query")
        if not isinstance(query, str) or not query.strip():
            return _err(400, "query must be a non-empty string")
        mode = payload.get("mode", "gp")
        if mode not in MODES:
            return _err(400, f"mode must be one of {list(MODES)}")
        run = engine.start(query.strip(), mode)
        return _ok({"run": run.to_dict()}, status_code=201)

    @app.get("/runs")
    def list_runs():
        return _ok({"runs": store.list_runs()})

    @app.get("/runs/{run_id}")
    def get_run(run_id: str):
        try:
            run = store.load(run_id)
        except StoreError as exc:
            return _err(404, str(exc))
        return _ok({"run": run.to_dict(), "artifacts": store.list_artifacts(run_id)})

    @app.get("/runs/{run_id}/stages/{name}")
    def get_stage(run_id: str, name: str):
        if name not in STAGES:
            return _err(404, f"unknown stage {name!r}")
        try:
            run = store.load(run_id)
        except StoreError as exc:
            return _err(404, str(exc))
        records = run.records_for(name)
        if not records:
            return _err(404, f"stage {name!r} has not executed for run {run_id!r}")
        return _ok({"run_id": run_id, "stage": name, "records": [r.to_dict() for r in records]})

    @app.get("/runs/{run_id}/pending-review")
    def pending_review(run_id: str):
        try:
            run = store.load(run_id)
        except StoreError as exc:
            return _err(404, str(exc))
        if run.status != AWAITING_REVIEW:
            return _err(404, f"run {run_id!r} has no pending review (status {run.status!r})")
        scientist = run.latest("scientist")
        return _ok(
            {
                "run_id": run_id,
                "stage": "human_review",
                "hypothesis": run.hypothesis.to_dict() if run.hypothesis else None,
                "draft_text": scientist.output.get("text", "") if scientist else "",
            }
        )

    @app.post("/runs/{run_id}/review")
    def post_review(run_id: str, payload: dict = Body(...)):
        try:
            decision = ReviewDecision(
                action=str(payload.get("action", "")),
                edited_statement=payload.get("edited_statement"),
                note=str(payload.get("note", "") or ""),
            )
        except ValueError as exc:
            return _err(400, str(exc))
        try:
            run = engine.apply_review(run_id, decision)
        except ConflictError as exc:
            return _err(409, str(exc))
        except StoreError as exc:
            return _err(404, str(exc))
        return _ok({"run": run.to_dict()})

    @app.get("/runs/{run_id}/artifacts/{name}")
    def get_artifact(run_id: str, name: str):
        try:
            content = store.read_artifact(run_id, name)
        except StoreError as exc:
            return _err(404, str(exc))
        suffix = "." + name.rsplit(".", 1)[-1] if "." in name else ""
        return _ok(
            {
                "run_id": run_id,
                "name": name,
                "media_type": _MEDIA_TYPES.get(suffix, "text/plain"),
                "content": content.decode("utf-8"),
            }
        )

    return app


def serve(
    runs_dir: str,
    host: str = "127.0.0.1",
    port: int = 8080,
    backends: Optional[Mapping[str, Callable]] = None,
    config: Optional[PipelineConfig] = None,
) -> None:
    """Run the service until interrupted (CLI entry point)."""
    import uvicorn

    app = make_app(RunStore(runs_dir), backends, config)
    uvicorn.run(app, host=host, port=port, log_level="info")
