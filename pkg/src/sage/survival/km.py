"""Product-limit survival curve estimation."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from sage.survival.types import SurvivalRecord


@dataclass(frozen=True)
class KMCurve:
    """Step curve over distinct event times.

    times[i] is the i-th distinct event time; survival[i] the estimate just
    after it; at_risk[i]/events[i] the risk-set size and event count there.
    Censoring times are kept for tick marks and risk-set audits.
    """

    group: str
    n_subjects: int
    times: tuple[float, ...]
    survival: tuple[float, ...]
    at_risk: tuple[int, ...]
    events: tuple[int, ...]
    censor_times: tuple[float, ...]

    def survival_at(self, t: float) -> float:
        value = 1.0
        for time, s in zip(self.times, self.survival):
            if time <= t:
                value = s
            else:
                break
        return value

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "n_subjects": self.n_subjects,
            "times": list(self.times),
            "survival": list(self.survival),
            "at_risk": list(self.at_risk),
            "events": list(self.events),
            "censor_times": list(self.censor_times),
        }


def kaplan_meier(records: Sequence[SurvivalRecord], group: Optional[str] = None) -> KMCurve:
    """S(t) = prod over event times <= t of (1 - d_t / n_t).

    Subjects censored at t remain at risk for events occurring exactly at t.
    """
    if group is not None:
        selected = [r for r in records if r.group == group]
    else:
        selected = list(records)
    if not selected:
        raise ValueError(f"no records in group {group!r}")

    label = group if group is not None else (
        selected[0].group if len({r.group for r in selected}) == 1 else "combined")

    event_times = sorted({r.time for r in selected if r.event})
    censor_times = tuple(sorted(r.time for r in selected if not r.event))

    times, survival, at_risk, events = [], [], [], []
    s = 1.0
    for t in event_times:
        n_t = sum(1 for r in selected if r.time >= t)
        d_t = sum(1 for r in selected if r.event and r.time == t)
        s *= 1.0 - d_t / n_t
        times.append(t)
        survival.append(s)
        at_risk.append(n_t)
        events.append(d_t)

    return KMCurve(
        group=label,
        n_subjects=len(selected),
        times=tuple(times),
        survival=tuple(survival),
        at_risk=tuple(at_risk),
        events=tuple(events),
        censor_times=censor_times,
    )


def km_step_table(curve: KMCurve) -> str:
    """CSV step table, starting from S(0) = 1 with the full cohort at risk."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["time", "at_risk", "events", "survival"])
    writer.writerow([0.0, curve.n_subjects, 0, 1.0])
    for time, n, d, s in zip(curve.times, curve.at_risk, curve.events, curve.survival):
        writer.writerow([time, n, d, repr(s)])
    return buffer.getvalue()


def export_km_csv(curve: KMCurve, path: str | Path) -> None:
    Path(path).write_text(km_step_table(curve))
