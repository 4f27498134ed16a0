"""Survival statistics: stratification, Kaplan-Meier, log-rank, Cox PH."""

from sage.survival.chi2 import chi2_sf, regularized_upper_gamma
from sage.survival.cox import Z_95, CoxConfig, CoxResult, cox_ph, partial_loglik
from sage.survival.km import KMCurve, export_km_csv, kaplan_meier, km_step_table
from sage.survival.logrank import LogRankResult, logrank_test
from sage.survival.plots import km_plot
from sage.survival.stratify import JointStratification, stratify_joint
from sage.survival.tools import default_registry, register_tools
from sage.survival.types import (
    SurvivalDataset,
    SurvivalRecord,
    load_survival_csv,
    record_from_dict,
    records_from_dicts,
)

__all__ = [
    "chi2_sf",
    "regularized_upper_gamma",
    "SurvivalRecord",
    "SurvivalDataset",
    "load_survival_csv",
    "record_from_dict",
    "records_from_dicts",
    "KMCurve",
    "kaplan_meier",
    "km_step_table",
    "export_km_csv",
    "LogRankResult",
    "logrank_test",
    "CoxConfig",
    "CoxResult",
    "cox_ph",
    "partial_loglik",
    "Z_95",
    "JointStratification",
    "stratify_joint",
    "km_plot",
    "register_tools",
    "default_registry",
]
