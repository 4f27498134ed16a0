"""Triple ingestion: newline-delimited JSON in, validated triples out.

Bad records never abort the stream; every rejection lands in the report
under one cause. Unknown normalized relations are not rejected, they fall
back to the configured catch-all tag and are counted separately.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from sage.kg.types import (
    DEFAULT_ONTOLOGY_TYPES,
    DEFAULT_RELATIONS,
    FALLBACK_RELATION,
    Triple,
    normalize_name,
)

REQUIRED_FIELDS = (
    "head",
    "head_type",
    "relation_text",
    "relation_norm",
    "tail",
    "tail_type",
    "confidence",
    "evidence",
    "doc_id",
)

DEFAULT_MIN_CONFIDENCE = 0.5


@dataclass
class RejectionReport:
    """Per-cause rejection counts for one ingestion pass."""

    counts: dict[str, int] = field(default_factory=dict)
    relation_fallbacks: int = 0
    accepted: int = 0
    total: int = 0

    def reject(self, cause: str) -> None:
        self.counts[cause] = self.counts.get(cause, 0) + 1

    @property
    def rejected(self) -> int:
        return sum(self.counts.values())

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "accepted": self.accepted,
            "rejected": self.rejected,
            "causes": dict(sorted(self.counts.items())),
            "relation_fallbacks": self.relation_fallbacks,
        }


def parse_triple_stream(lines: Iterable[str]) -> Iterable[dict | str]:
    """Yield parsed objects, or the raw line for records that are not JSON
    objects (the validator turns those into malformed_json rejections)."""
    for line in lines:
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError:
            yield line
            continue
        yield obj if isinstance(obj, dict) else line


def ingest_triples(
    raw: Iterable[dict | str],
    min_confidence: float = DEFAULT_MIN_CONFIDENCE,
    ontology_types: Sequence[str] = DEFAULT_ONTOLOGY_TYPES,
    relations: Sequence[str] = DEFAULT_RELATIONS,
) -> tuple[list[Triple], RejectionReport]:
    """Validate and filter a triple stream.

    Checks run in a fixed order so each bad record is counted once:
    malformed_json, missing_field, confidence_out_of_range, empty_entity,
    unknown_entity_type, below_threshold.
    """
    if not 0.0 <= min_confidence <= 1.0:
        raise ValueError(f"min_confidence must be in [0,1], got {min_confidence}")
    type_set = set(ontology_types)
    relation_set = set(relations)
    report = RejectionReport()
    accepted: list[Triple] = []

    for record in raw:
        report.total += 1
        if not isinstance(record, dict):
            report.reject("malformed_json")
            continue
        if any(f not in record for f in REQUIRED_FIELDS):
            report.reject("missing_field")
            continue
        try:
            confidence = float(record["confidence"])
        except (TypeError, ValueError):
            report.reject("confidence_out_of_range")
            continue
        if not 0.0 <= confidence <= 1.0:
            report.reject("confidence_out_of_range")
            continue
        head = normalize_name(record["head"])
        tail = normalize_name(record["tail"])
        if not head or not tail:
            report.reject("empty_entity")
            continue
        head_type = str(record["head_type"])
        tail_type = str(record["tail_type"])
        if head_type not in type_set or tail_type not in type_set:
            report.reject("unknown_entity_type")
            continue
        if confidence < min_confidence:
            report.reject("below_threshold")
            continue
        relation_norm = str(record["relation_norm"])
        if relation_norm not in relation_set:
            relation_norm = FALLBACK_RELATION
            report.relation_fallbacks += 1
        accepted.append(
            Triple(
                head=head,
                head_type=head_type,
                relation_text=str(record["relation_text"]),
                relation_norm=relation_norm,
                tail=tail,
                tail_type=tail_type,
                confidence=confidence,
                evidence=str(record["evidence"]),
                doc_id=str(record["doc_id"]),
            )
        )
        report.accepted += 1

    return accepted, report
