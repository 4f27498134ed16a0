"""Two-group log-rank test."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from sage.survival.chi2 import chi2_sf
from sage.survival.types import SurvivalRecord


@dataclass(frozen=True)
class LogRankResult:
    chi_square: float
    degrees_of_freedom: int
    p_value: float
    observed: tuple[float, float]
    expected: tuple[float, float]

    def to_dict(self) -> dict:
        return {
            "chi_square": self.chi_square,
            "degrees_of_freedom": self.degrees_of_freedom,
            "p_value": self.p_value,
            "observed": list(self.observed),
            "expected": list(self.expected),
        }


def logrank_test(records: Sequence[SurvivalRecord],
                 groups: tuple[str, str]) -> LogRankResult:
    """Observed-vs-expected events summed over event times, hypergeometric
    variance, one degree of freedom."""
    label_a, label_b = groups
    pool = [r for r in records if r.group in (label_a, label_b)]
    in_a = [r for r in pool if r.group == label_a]
    in_b = [r for r in pool if r.group == label_b]
    if not in_a or not in_b:
        empty = label_a if not in_a else label_b
        raise ValueError(f"group {empty!r} has no records")
    total_events = sum(1 for r in pool if r.event)
    if total_events == 0:
        raise ValueError("log-rank statistic undefined with zero events")

    event_times = sorted({r.time for r in pool if r.event})
    observed_a = 0.0
    expected_a = 0.0
    variance = 0.0
    for t in event_times:
        n_t = sum(1 for r in pool if r.time >= t)
        n_a = sum(1 for r in in_a if r.time >= t)
        d_t = sum(1 for r in pool if r.event and r.time == t)
        d_a = sum(1 for r in in_a if r.event and r.time == t)
        observed_a += d_a
        expected_a += d_t * n_a / n_t
        if n_t > 1:
            n_b = n_t - n_a
            variance += d_t * (n_a / n_t) * (n_b / n_t) * (n_t - d_t) / (n_t - 1)

    if variance == 0.0:
        chi = 0.0
    else:
        chi = (observed_a - expected_a) ** 2 / variance
    observed_b = float(total_events) - observed_a
    expected_b = float(total_events) - expected_a
    return LogRankResult(
        chi_square=chi,
        degrees_of_freedom=1,
        p_value=chi2_sf(chi, 1),
        observed=(observed_a, observed_b),
        expected=(expected_a, expected_b),
    )
