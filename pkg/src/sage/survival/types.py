"""Survival data records and CSV loading."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence


@dataclass(frozen=True)
class SurvivalRecord:
    subject_id: str
    time: float
    event: bool
    group: str = "all"

    def __post_init__(self):
        if self.time < 0:
            raise ValueError(f"follow-up time must be nonnegative, got {self.time!r} "
                             f"for subject {self.subject_id!r}")
        if not self.group:
            raise ValueError(f"group label empty for subject {self.subject_id!r}")

    def to_dict(self) -> dict:
        return {"subject_id": self.subject_id, "time": self.time,
                "event": self.event, "group": self.group}


def record_from_dict(data: Mapping) -> SurvivalRecord:
    return SurvivalRecord(
        subject_id=str(data["subject_id"]),
        time=float(data["time"]),
        event=_parse_event(data["event"]),
        group=str(data.get("group", "all")),
    )


def _parse_event(value) -> bool:
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, float)):
        return bool(int(value))
    text = str(value).strip().lower()
    if text in {"1", "true", "yes", "event"}:
        return True
    if text in {"0", "false", "no", "censored"}:
        return False
    raise ValueError(f"cannot interpret event marker {value!r}")


@dataclass
class SurvivalDataset:
    """Records plus aligned covariate columns from one CSV."""

    records: list[SurvivalRecord]
    covariates: dict[str, list[float]] = field(default_factory=dict)

    def groups(self) -> list[str]:
        return sorted({r.group for r in self.records})


_CORE_COLUMNS = ("subject_id", "time", "event", "group")


def load_survival_csv(source: str | Path | io.TextIOBase) -> SurvivalDataset:
    """Read subject_id,time,event,group plus any extra columns as covariates."""
    if isinstance(source, (str, Path)):
        text = Path(source).read_text()
    else:
        text = source.read()
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None:
        raise ValueError("empty survival CSV")
    missing = [c for c in ("subject_id", "time", "event") if c not in reader.fieldnames]
    if missing:
        raise ValueError(f"survival CSV missing required columns: {', '.join(missing)}")
    covariate_names = [c for c in reader.fieldnames if c not in _CORE_COLUMNS]

    records: list[SurvivalRecord] = []
    covariates: dict[str, list[float]] = {name: [] for name in covariate_names}
    for line_no, row in enumerate(reader, start=2):
        try:
            records.append(record_from_dict(row if row.get("group") not in (None, "")
                                            else {**row, "group": "all"}))
            for name in covariate_names:
                covariates[name].append(float(row[name]))
        except (ValueError, TypeError, KeyError) as exc:
            raise ValueError(f"bad survival CSV row at line {line_no}: {exc}") from exc
    if not records:
        raise ValueError("survival CSV contains no data rows")
    return SurvivalDataset(records=records, covariates=covariates)


def records_from_dicts(rows: Iterable[Mapping]) -> list[SurvivalRecord]:
    return [record_from_dict(row) for row in rows]
