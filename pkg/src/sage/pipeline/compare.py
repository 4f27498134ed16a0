"""Specific-memory vs shared-memory comparison harness.

Runs the same query under both context modes with identical deterministic
backends and reports token totals per mode, per stage, and per seed. The
specific-memory mode must come in strictly cheaper on prompt tokens; a
violation raises instead of reporting, because it would mean the context
policy leaked sources.

Wall times are measured and reported but are inherently noisy; use
``report_signature`` to strip them when comparing reports for equality.
"""

from __future__ import annotations

import copy
import tempfile
import time
from dataclasses import replace
from typing import Callable, Iterable, Mapping, Optional, Union

from sage.pipeline.runner import PipelineConfig, PipelineEngine, PipelineError
from sage.pipeline.store import RunStore
from sage.pipeline.types import COMPLETED


def _mode_stats(run) -> dict:
    per_stage: dict = {}
    for record in run.stages:
        slot = per_stage.setdefault(record.name, {"prompt": 0, "completion": 0})
        slot["prompt"] += record.prompt_tokens
        slot["completion"] += record.completion_tokens
    return {
        "status": run.status,
        "prompt_tokens": run.prompt_token_total,
        "completion_tokens": run.completion_token_total,
        "per_stage": per_stage,
    }


def compare_modes(
    query: str,
    backends: Optional[Mapping[str, Callable]] = None,
    seeds: Union[int, Iterable[int]] = 1,
    config: Optional[PipelineConfig] = None,
) -> dict:
    """Run ``query`` under gp and cp for each seed and tabulate the costs."""
    if isinstance(seeds, int):
        if seeds < 1:
            raise ValueError("seeds must be a positive count or an iterable")
        seed_list = list(range(seeds))
    else:
        seed_list = list(seeds)
        if not seed_list:
            raise ValueError("seeds must be a positive count or an iterable")
    base = config or PipelineConfig(auto_approve=True)

    runs = []
    for seed in seed_list:
        entry: dict = {"seed": seed}
        for mode in ("gp", "cp"):
            run_config = replace(base, seed=seed, auto_approve=True)
            store = RunStore(tempfile.mkdtemp(prefix=f"sage-compare-{mode}-"))
            engine = PipelineEngine(store, backends, run_config)
            started = time.perf_counter()
            run = engine.start(query, mode, run_id=f"cmp-{mode}-{seed}")
            wall = time.perf_counter() - started
            if run.status != COMPLETED:
                raise PipelineError(
                    f"comparison run ({mode}, seed {seed}) ended {run.status}: {run.error}"
                )
            stats = _mode_stats(run)
            stats["wall_time"] = wall
            entry[mode] = stats
        gp_prompt = entry["gp"]["prompt_tokens"]
        cp_prompt = entry["cp"]["prompt_tokens"]
        if gp_prompt >= cp_prompt:
            raise PipelineError(
                f"context policy leak: gp prompt tokens {gp_prompt} are not "
                f"strictly below cp prompt tokens {cp_prompt} (seed {seed})"
            )
        entry["prompt_delta"] = cp_prompt - gp_prompt
        entry["prompt_reduction"] = round(1.0 - gp_prompt / cp_prompt, 6)
        runs.append(entry)

    def _mean(values) -> float:
        return sum(values) / len(values)

    report = {
        "query": query,
        "seeds": seed_list,
        "metrics": ["prompt", "completion", "time"],
        "runs": runs,
        "mean": {
            "gp_prompt_tokens": _mean([r["gp"]["prompt_tokens"] for r in runs]),
            "cp_prompt_tokens": _mean([r["cp"]["prompt_tokens"] for r in runs]),
            "gp_completion_tokens": _mean([r["gp"]["completion_tokens"] for r in runs]),
            "cp_completion_tokens": _mean([r["cp"]["completion_tokens"] for r in runs]),
            "gp_wall_time": _mean([r["gp"]["wall_time"] for r in runs]),
            "cp_wall_time": _mean([r["cp"]["wall_time"] for r in runs]),
            "prompt_reduction": _mean([r["prompt_reduction"] for r in runs]),
        },
    }
    return report


def report_signature(report: Mapping) -> dict:
    """The report with every timing field removed; equal for equal seeds."""
    stripped = copy.deepcopy(dict(report))
    mean = stripped.get("mean", {})
    mean.pop("gp_wall_time", None)
    mean.pop("cp_wall_time", None)
    for entry in stripped.get("runs", ()):
        for mode in ("gp", "cp"):
            if mode in entry:
                entry[mode].pop("wall_time", None)
    return stripped
