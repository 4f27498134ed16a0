"""Resource probes: external-evidence lookups behind a uniform interface.

A probe answers one source tag (literature, datasets, clinical trials,
technical stack, methods) with found/not-found results. Live clients are out
of scope; fixtures and callables cover testing and integration. The rubric
maps each feasibility criterion to the source tags whose hit-rate scores it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping, Sequence

PROBE_SOURCES = ("literature", "datasets", "clinical_trials", "technical", "methods")

# Which external services each source tag stands in for.
PROBE_REGISTRY: dict[str, tuple[str, ...]] = {
    "literature": ("pubmed", "semantic_scholar"),
    "datasets": ("geo", "tcga_gdc"),
    "clinical_trials": ("clinicaltrials_gov",),
    "technical": ("pypi", "github"),
    "methods": ("papers_with_code",),
}


class ProbeError(Exception):
    """A probe could not produce results."""


@dataclass(frozen=True)
class ResourceProbeResult:
    source: str
    found: bool
    detail: str = ""

    def __post_init__(self):
        if self.source not in PROBE_REGISTRY:
            raise ValueError(f"unknown probe source {self.source!r}; "
                             f"expected one of {sorted(PROBE_REGISTRY)}")

    def to_dict(self) -> dict:
        return {"source": self.source, "found": self.found, "detail": self.detail}


class ResourceProbe:
    """Interface: search(hypothesis) -> list[ResourceProbeResult]."""

    source: str = ""

    def search(self, hypothesis) -> list[ResourceProbeResult]:
        raise NotImplementedError


class FixtureProbe(ResourceProbe):
    """Replays canned results regardless of the hypothesis."""

    def __init__(self, source: str, results: Sequence[ResourceProbeResult]):
        self.source = source
        self._results = [r if isinstance(r, ResourceProbeResult)
                         else ResourceProbeResult(source=source, **r) for r in results]
        for r in self._results:
            if r.source != source:
                raise ValueError(f"fixture for {source!r} contains a {r.source!r} result")

    def search(self, hypothesis) -> list[ResourceProbeResult]:
        return list(self._results)


class CallableProbe(ResourceProbe):
    def __init__(self, source: str, fn: Callable):
        self.source = source
        self._fn = fn

    def search(self, hypothesis) -> list[ResourceProbeResult]:
        return list(self._fn(hypothesis))


@dataclass(frozen=True)
class Rubric:
    """Rule-based sub-scoring: each criterion reads the hit-rate of its sources.

    A criterion with no usable results (probe missing or failed) falls to the
    floor and the assessment carries a degraded-evidence note; nothing fails
    silently.
    """

    sources: Mapping[str, tuple[str, ...]] = field(default_factory=lambda: {
        "data_availability": ("datasets", "clinical_trials"),
        "tech_readiness": ("technical",),
        "logical_soundness": ("literature",),
        "resource_constraints": ("methods",),
    })
    floor: float = 0.0

    def __post_init__(self):
        for criterion, tags in self.sources.items():
            for tag in tags:
                if tag not in PROBE_REGISTRY:
                    raise ValueError(f"rubric maps {criterion} to unknown source {tag!r}")
        if not 0.0 <= self.floor <= 10.0:
            raise ValueError("rubric floor must lie in [0, 10]")


DEFAULT_RUBRIC = Rubric()


def rubric_from_dict(data: Mapping) -> Rubric:
    sources = {k: tuple(v) for k, v in data.get("sources", {}).items()} or None
    kwargs = {}
    if sources is not None:
        kwargs["sources"] = sources
    if "floor" in data:
        kwargs["floor"] = float(data["floor"])
    return Rubric(**kwargs)


def load_probe_fixtures(directory: str | Path) -> dict[str, ResourceProbe]:
    """Read <source>.json files, each a list of {found, detail} records."""
    directory = Path(directory)
    probes: dict[str, ResourceProbe] = {}
    for source in PROBE_SOURCES:
        path = directory / f"{source}.json"
        if not path.exists():
            continue
        records = json.loads(path.read_text())
        probes[source] = FixtureProbe(source, [
            ResourceProbeResult(source=source, found=bool(r["found"]),
                                detail=str(r.get("detail", "")))
            for r in records
        ])
    if not probes:
        raise ProbeError(f"no probe fixture files found under {directory}")
    return probes
