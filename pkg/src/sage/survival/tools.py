"""Registry descriptors for the survival analysis tools.

Every tool speaks JSON-shaped values (lists of record dicts in, result
dicts out) so an orchestrating agent can invoke them uniformly.
"""

from __future__ import annotations

from typing import Mapping, Optional, Sequence

from sage.registry import ToolDescriptor, ToolRegistry
from sage.survival.cox import CoxConfig, cox_ph
from sage.survival.km import kaplan_meier
from sage.survival.logrank import logrank_test
from sage.survival.stratify import stratify_joint
from sage.survival.types import records_from_dicts

_RECORD_SCHEMA = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["subject_id", "time", "event"],
        "properties": {
            "subject_id": {"type": "string"},
            "time": {"type": "number", "minimum": 0},
            "event": {"type": "boolean"},
            "group": {"type": "string"},
        },
    },
}


def tool_stratify_joint(values_a: Mapping[str, float], values_b: Mapping[str, float],
                        rule: str = "median", threshold_a: Optional[float] = None,
                        threshold_b: Optional[float] = None,
                        marker_a_name: str = "marker_a", marker_b_name: str = "marker_b",
                        contrast: Optional[str] = None) -> dict:
    return stratify_joint(values_a, values_b, rule=rule, threshold_a=threshold_a,
                          threshold_b=threshold_b, marker_a_name=marker_a_name,
                          marker_b_name=marker_b_name, contrast=contrast).to_dict()


def tool_kaplan_meier(records: Sequence[Mapping], group: Optional[str] = None) -> dict:
    return kaplan_meier(records_from_dicts(records), group=group).to_dict()


def tool_logrank(records: Sequence[Mapping], groups: Sequence[str]) -> dict:
    label_a, label_b = groups
    return logrank_test(records_from_dicts(records), (label_a, label_b)).to_dict()


def tool_cox(records: Sequence[Mapping], covariates: Mapping[str, Sequence[float]],
             tol: float = 1e-8, max_iter: int = 50) -> dict:
    config = CoxConfig(tol=tol, max_iter=max_iter)
    return cox_ph(records_from_dicts(records), covariates, config).to_dict()


def register_tools(registry: ToolRegistry) -> list[str]:
    """Install the survival tools; survival_km stays as an alias for KM."""
    registry.register(ToolDescriptor(
        name="stratify_joint",
        description="Joint two-marker high/low stratification (median, quartile, or fixed cuts)",
        input_schema={"values_a": {"type": "object"}, "values_b": {"type": "object"},
                      "rule": {"enum": ["median", "quartile", "fixed"]}},
        output_schema={"assignments": {"type": "object"}, "rule": {"type": "string"}},
        fn=tool_stratify_joint,
    ))
    registry.register(ToolDescriptor(
        name="kaplan_meier",
        description="Product-limit survival curve for one group (or all records)",
        input_schema={"records": _RECORD_SCHEMA, "group": {"type": ["string", "null"]}},
        output_schema={"times": {"type": "array"}, "survival": {"type": "array"}},
        fn=tool_kaplan_meier,
    ), aliases=("survival_km",))
    registry.register(ToolDescriptor(
        name="logrank_test",
        description="Two-group log-rank test (hypergeometric variance, 1 dof)",
        input_schema={"records": _RECORD_SCHEMA, "groups": {"type": "array"}},
        output_schema={"chi_square": {"type": "number"}, "p_value": {"type": "number"}},
        fn=tool_logrank,
    ))
    registry.register(ToolDescriptor(
        name="cox_ph",
        description="Cox proportional hazards (Breslow ties, damped Newton)",
        input_schema={"records": _RECORD_SCHEMA, "covariates": {"type": "object"}},
        output_schema={"coefficients": {"type": "array"}, "p_values": {"type": "array"}},
        fn=tool_cox,
    ))
    registry.register(ToolDescriptor(
        name="concordance_index",
        description="Concordance evaluation (declared, not implemented)",
        input_schema={"records": _RECORD_SCHEMA, "risk_scores": {"type": "array"}},
        output_schema={"c_index": {"type": "number"}},
        implemented=False,
    ))
    return registry.list_names()


def default_registry() -> ToolRegistry:
    registry = ToolRegistry()
    register_tools(registry)
    return registry
