"""Run persistence: one directory per run, crash-recoverable.

Layout under the store root:

    <run_id>/run.json        latest snapshot, written atomically
    <run_id>/events.jsonl    append-only event log with full payload copies
    <run_id>/artifacts/      validation outputs, plots, exported summaries

Snapshots hold digests where events hold full copies, so a run directory
stays small while the event log preserves the complete audit trail.
"""

from __future__ import annotations

import json
import os
import re
import threading
import time
from pathlib import Path
from typing import Optional

from sage.pipeline.types import PipelineRun, canonical_json

_SAFE_NAME = re.compile(r"^[A-Za-z0-9][A-Za-z0-9._-]*$")


class StoreError(RuntimeError):
    pass


def _check_name(name: str, kind: str) -> str:
    if not _SAFE_NAME.match(name) or ".." in name:
        raise StoreError(f"unsafe {kind} name {name!r}")
    return name


class RunStore:
    """Filesystem-backed run persistence with per-run locks."""

    def __init__(self, root):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._locks = {}
        self._locks_guard = threading.Lock()

    # ---- locking ---------------------------------------------------------

    def lock_for(self, run_id: str) -> threading.Lock:
        with self._locks_guard:
            lock = self._locks.get(run_id)
            if lock is None:
                lock = threading.Lock()
                self._locks[run_id] = lock
            return lock

    # ---- paths -----------------------------------------------------------

    def run_dir(self, run_id: str) -> Path:
        return self.root / _check_name(run_id, "run id")

    def artifacts_dir(self, run_id: str) -> Path:
        return self.run_dir(run_id) / "artifacts"

    # ---- snapshots ---------------------------------------------------------

    def create(self, run: PipelineRun) -> None:
        run_dir = self.run_dir(run.run_id)
        if run_dir.exists():
            raise StoreError(f"run {run.run_id!r} already exists")
        run_dir.mkdir(parents=True)
        self.artifacts_dir(run.run_id).mkdir()
        self.save(run)
        self.append_event(run.run_id, "run_created", {"query": run.query, "mode": run.mode})

    def save(self, run: PipelineRun) -> None:
        run_dir = self.run_dir(run.run_id)
        if not run_dir.is_dir():
            raise StoreError(f"no run directory for {run.run_id!r}")
        payload = json.dumps(run.to_dict(), indent=2, sort_keys=True) + "\n"
        tmp = run_dir / "run.json.tmp"
        tmp.write_text(payload, encoding="utf-8")
        os.replace(tmp, run_dir / "run.json")

    def exists(self, run_id: str) -> bool:
        return (self.run_dir(run_id) / "run.json").is_file()

    def load(self, run_id: str) -> PipelineRun:
        path = self.run_dir(run_id) / "run.json"
        if not path.is_file():
            raise StoreError(f"no run named {run_id!r}")
        return PipelineRun.from_dict(json.loads(path.read_text(encoding="utf-8")))

    def list_runs(self) -> list:
        briefs = []
        for entry in sorted(self.root.iterdir()):
            if (entry / "run.json").is_file():
                briefs.append(self.load(entry.name).brief())
        briefs.sort(key=lambda b: (b["created_at"], b["run_id"]))
        return briefs

    # ---- event log ---------------------------------------------------------

    def append_event(self, run_id: str, event_type: str, payload: dict) -> dict:
        path = self.run_dir(run_id) / "events.jsonl"
        seq = 0
        if path.exists():
            with path.open("r", encoding="utf-8") as handle:
                seq = sum(1 for _ in handle)
        event = {"seq": seq, "ts": time.time(), "type": event_type, "payload": payload}
        with path.open("a", encoding="utf-8") as handle:
            handle.write(canonical_json(event) + "\n")
        return event

    def events(self, run_id: str) -> list:
        path = self.run_dir(run_id) / "events.jsonl"
        if not path.exists():
            return []
        with path.open("r", encoding="utf-8") as handle:
            return [json.loads(line) for line in handle if line.strip()]

    # ---- artifacts ---------------------------------------------------------

    def write_artifact(self, run_id: str, name: str, content) -> Path:
        _check_name(name, "artifact")
        path = self.artifacts_dir(run_id)
        path.mkdir(parents=True, exist_ok=True)
        target = path / name
        if isinstance(content, bytes):
            target.write_bytes(content)
        else:
            target.write_text(content, encoding="utf-8")
        return target

    def artifact_path(self, run_id: str, name: str) -> Path:
        return self.artifacts_dir(run_id) / _check_name(name, "artifact")

    def read_artifact(self, run_id: str, name: str) -> bytes:
        path = self.artifact_path(run_id, name)
        if not path.is_file():
            raise StoreError(f"no artifact named {name!r} for run {run_id!r}")
        return path.read_bytes()

    def list_artifacts(self, run_id: str) -> list:
        path = self.artifacts_dir(run_id)
        if not path.is_dir():
            return []
        return sorted(p.name for p in path.iterdir() if p.is_file())

    # ---- data bank -----------------------------------------------------------

    def data_dir(self) -> Path:
        path = self.root / "_data"
        path.mkdir(parents=True, exist_ok=True)
        return path
