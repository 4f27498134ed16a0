"""Per-stage context allocation.

Two policies share one mechanism. In ``gp`` (graph-based, specific-memory)
mode each stage receives exactly the upstream outputs named in GP_SOURCES
and nothing else; notably the ontologist never sees the raw user query,
because the generated paths already encode its intent. In ``cp``
(chat-based, shared-memory) mode every stage receives the query plus the
full ordered transcript of all prior stage outputs, review text included.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Optional

from sage.pipeline.types import STAGES, MODES, PipelineRun, canonical_json

# exact upstream source set per stage under specific-memory allocation;
# "query" is the pseudo-source for the initial user query
GP_SOURCES = {
    "path_generation": ("query",),
    "ontologist": ("path_generation",),
    "scientist": ("ontologist",),
    "human_review": ("scientist",),
    "hypothesis_expansion": ("scientist",),
    "novelty_critic": ("hypothesis_expansion",),
    "feasibility": ("hypothesis_expansion",),
    "coding_instructions": ("hypothesis_expansion",),
    "coding": ("coding_instructions",),
    "results_interpreter": ("hypothesis_expansion", "coding_instructions", "coding"),
    "summary": ("results_interpreter", "hypothesis_expansion", "novelty_critic"),
}


class ContextError(RuntimeError):
    """A stage asked for context that is not available yet."""


@dataclass(frozen=True)
class ContextPolicy:
    mode: str = "gp"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown context mode {self.mode!r}")

    def sources_for(self, stage: str, run: Optional[PipelineRun] = None) -> tuple:
        if stage not in STAGES:
            raise ContextError(f"unknown stage {stage!r}")
        if self.mode == "gp":
            return GP_SOURCES[stage]
        # shared-memory transcript: the query plus every earlier stage
        prior = STAGES[: STAGES.index(stage)]
        if run is None:
            return ("query",) + prior
        executed = {r.name for r in run.stages}
        return ("query",) + tuple(s for s in prior if s in executed)


@dataclass(frozen=True)
class ContextBundle:
    """The exact text handed to a stage backend, with provenance."""

    stage: str
    mode: str
    sections: tuple  # ((source_name, text), ...)

    @property
    def sources(self) -> tuple:
        return tuple(name for name, _ in self.sections)

    @property
    def text(self) -> str:
        parts = [f"[{name}]\n{body}" for name, body in self.sections]
        return "\n\n".join(parts)

    @property
    def digest(self) -> str:
        return hashlib.sha256(self.text.encode("utf-8")).hexdigest()


def render_source(source: str, run: PipelineRun) -> str:
    """Materialize one upstream source as text for a bundle."""
    if source == "query":
        return run.query
    record = run.latest(source)
    if record is None:
        raise ContextError(
            f"stage requires output from {source!r} but none is recorded"
        )
    text = record.output.get("text")
    if isinstance(text, str) and text:
        return text
    return canonical_json(record.output)


def allocate_context(stage: str, run: PipelineRun, policy: ContextPolicy) -> ContextBundle:
    """Build the context bundle for ``stage`` under ``policy``.

    GP bundles contain exactly the policy's sources; a missing upstream
    output raises naming the absent stage.
    """
    sources = policy.sources_for(stage, run)
    sections = []
    for source in sources:
        try:
            sections.append((source, render_source(source, run)))
        except ContextError:
            raise ContextError(
                f"stage {stage!r} requires output from {source!r} but none is recorded"
            ) from None
    return ContextBundle(stage=stage, mode=policy.mode, sections=tuple(sections))
