"""Joint two-marker stratification into 2x2 (or contrast-vs-rest) groups."""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence


@dataclass(frozen=True)
class JointStratification:
    marker_a_name: str
    marker_b_name: str
    rule: str
    cut_a: float
    cut_b: float
    assignments: Mapping[str, str]  # subject -> group label

    def labels(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.assignments.values())))

    def group_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for label in self.assignments.values():
            counts[label] = counts.get(label, 0) + 1
        return counts

    def to_dict(self) -> dict:
        return {
            "marker_a_name": self.marker_a_name,
            "marker_b_name": self.marker_b_name,
            "rule": self.rule,
            "cut_a": self.cut_a,
            "cut_b": self.cut_b,
            "assignments": dict(self.assignments),
        }


def _cut_value(values: Sequence[float], rule: str, threshold: Optional[float],
               marker: str) -> float:
    if rule == "median":
        cut = statistics.median(values)
        if all(v == values[0] for v in values):
            raise ValueError(f"degenerate median cut: all {marker} values identical")
        return cut
    if rule == "quartile":
        if all(v == values[0] for v in values):
            raise ValueError(f"degenerate quartile cut: all {marker} values identical")
        return statistics.quantiles(values, n=4)[2]  # upper quartile
    if rule == "fixed":
        if threshold is None:
            raise ValueError("fixed rule requires a threshold")
        return float(threshold)
    raise ValueError(f"unknown cut rule {rule!r}; expected median, quartile, or fixed")


def stratify_joint(values_a: Mapping[str, float],
                   values_b: Mapping[str, float],
                   rule: str = "median",
                   threshold_a: Optional[float] = None,
                   threshold_b: Optional[float] = None,
                   marker_a_name: str = "marker_a",
                   marker_b_name: str = "marker_b",
                   contrast: Optional[str] = None) -> JointStratification:
    """Assign every subject to one of four high/low combinations.

    Ties at a cut go to the low side. With `contrast` set to one joint label,
    the output collapses to that label versus "rest".
    """
    if set(values_a) != set(values_b):
        only_a = sorted(set(values_a) - set(values_b))
        only_b = sorted(set(values_b) - set(values_a))
        raise ValueError("marker subject sets differ "
                         f"(only {marker_a_name}: {only_a}; only {marker_b_name}: {only_b})")
    if not values_a:
        raise ValueError("no subjects to stratify")

    subjects = sorted(values_a)
    cut_a = _cut_value([values_a[s] for s in subjects], rule, threshold_a, marker_a_name)
    cut_b = _cut_value([values_b[s] for s in subjects], rule, threshold_b, marker_b_name)

    assignments: dict[str, str] = {}
    for subject in subjects:
        side_a = "high" if values_a[subject] > cut_a else "low"
        side_b = "high" if values_b[subject] > cut_b else "low"
        label = f"{marker_a_name}_{side_a}/{marker_b_name}_{side_b}"
        assignments[subject] = label

    if contrast is not None:
        valid = {f"{marker_a_name}_{a}/{marker_b_name}_{b}"
                 for a in ("high", "low") for b in ("high", "low")}
        if contrast not in valid:
            raise ValueError(f"contrast {contrast!r} is not a joint label; "
                             f"expected one of {sorted(valid)}")
        assignments = {s: (label if label == contrast else "rest")
                       for s, label in assignments.items()}

    rule_text = rule if rule != "fixed" else f"fixed({cut_a!r},{cut_b!r})"
    return JointStratification(
        marker_a_name=marker_a_name,
        marker_b_name=marker_b_name,
        rule=rule_text,
        cut_a=cut_a,
        cut_b=cut_b,
        assignments=assignments,
    )
