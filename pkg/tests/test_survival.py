"""Survival statistics tests: chi-square sf, KM, log-rank, Cox, stratification.

The *_reference fixtures were produced once by scripts/gen_survival_fixtures.py
from independent implementations and frozen; tests compare against the stored
numbers only.
"""

import json
import math
import random
from pathlib import Path

import numpy as np
import pytest
from click.testing import CliRunner

from sage.registry import ToolDescriptor, ToolRegistry
from sage.survival import (
    Z_95,
    CoxConfig,
    SurvivalRecord,
    chi2_sf,
    cox_ph,
    default_registry,
    export_km_csv,
    kaplan_meier,
    km_plot,
    km_step_table,
    load_survival_csv,
    logrank_test,
    partial_loglik,
    records_from_dicts,
    regularized_upper_gamma,
    register_tools,
    stratify_joint,
)
from sage.survival.cli import main as survival_cli

FIXTURES = json.loads((Path(__file__).parent / "fixtures" / "survival_reference.json").read_text())


def rec(sid, time, event, group="all"):
    return SurvivalRecord(subject_id=sid, time=time, event=event, group=group)


# -------------------------------------------------------------- chi-square

def test_chi2_sf_matches_frozen_reference_grid():
    for case in FIXTURES["chi2_sf"]:
        got = chi2_sf(case["x"], case["dof"])
        assert got == pytest.approx(case["sf"], abs=1e-12), (case, got)


def test_chi2_sf_basic_shape():
    assert chi2_sf(0.0, 1) == 1.0
    assert chi2_sf(0.0, 7) == 1.0
    values = [chi2_sf(x, 3) for x in (0.5, 1.0, 2.0, 5.0, 9.0)]
    assert values == sorted(values, reverse=True)
    assert 0.0 < chi2_sf(100.0, 1) < 1e-20


def test_chi2_sf_rejects_bad_arguments():
    with pytest.raises(ValueError):
        chi2_sf(-0.1, 1)
    with pytest.raises(ValueError):
        chi2_sf(1.0, 0)
    with pytest.raises(ValueError):
        regularized_upper_gamma(-1.0, 2.0)


def test_gamma_series_and_fraction_agree_at_the_switch():
    # both branches evaluated just either side of x = a + 1
    for a in (0.5, 1.0, 2.5, 7.0):
        x = a + 1.0
        below = regularized_upper_gamma(a, x - 1e-9)
        above = regularized_upper_gamma(a, x + 1e-9)
        assert below == pytest.approx(above, rel=1e-7)


# ------------------------------------------------------------ Kaplan-Meier

def test_km_no_events_stays_flat():
    records = [rec(f"s{i}", float(i + 1), False) for i in range(5)]
    curve = kaplan_meier(records)
    assert curve.times == ()
    assert curve.survival == ()
    assert curve.survival_at(100.0) == 1.0
    assert len(curve.censor_times) == 5


def test_km_hand_product_limit():
    records = [rec("a", 1.0, True), rec("b", 2.0, True),
               rec("c", 3.0, False), rec("d", 4.0, False)]
    curve = kaplan_meier(records)
    assert curve.times == (1.0, 2.0)
    assert curve.survival[0] == pytest.approx(0.75)
    assert curve.survival[1] == pytest.approx(0.5)
    assert curve.at_risk == (4, 3)
    assert curve.events == (1, 1)


def test_km_censored_subjects_leave_the_risk_set():
    records = [rec("a", 1.0, True), rec("b", 1.5, False),
               rec("c", 2.0, True), rec("d", 3.0, False)]
    curve = kaplan_meier(records)
    # at t=2 only c and d remain at risk
    assert curve.at_risk == (4, 2)
    assert curve.survival[1] == pytest.approx(0.75 * 0.5)


def test_km_tied_censor_and_event_keeps_censored_at_risk():
    records = [rec("a", 2.0, True), rec("b", 2.0, False), rec("c", 3.0, False)]
    curve = kaplan_meier(records)
    assert curve.at_risk == (3,)
    assert curve.survival == (pytest.approx(2.0 / 3.0),)


def test_km_matches_frozen_reference_curve():
    fx = FIXTURES["km20"]
    curve = kaplan_meier(records_from_dicts(fx["records"]))
    assert list(curve.times) == [float(t) for t in fx["event_times"]]
    for got, want in zip(curve.survival, fx["survival"]):
        assert got == pytest.approx(want, abs=1e-6)


def test_km_monotone_and_bounded_on_random_cohorts():
    rng = random.Random(5)
    for _ in range(25):
        records = [rec(f"s{i}", round(rng.uniform(0.0, 30.0), 1), rng.random() < 0.6)
                   for i in range(rng.randint(1, 40))]
        curve = kaplan_meier(records)
        assert all(0.0 <= s <= 1.0 for s in curve.survival)
        assert list(curve.survival) == sorted(curve.survival, reverse=True)
        assert curve.survival_at(-1.0) == 1.0


def test_km_censoring_additions_touch_only_covered_event_times():
    # a subject censored at c joins the risk set of every event time <= c and
    # none after, so steps at event times later than the added censoring are
    # the only ones guaranteed unchanged
    base = [rec("a", 2.0, True), rec("b", 3.0, True), rec("c", 4.0, False)]
    before = kaplan_meier(base)
    early = kaplan_meier(base + [rec("x", 1.0, False)])
    assert early.times == before.times
    assert early.survival == before.survival
    assert early.at_risk == before.at_risk
    late = kaplan_meier(base + [rec("y", 99.0, False)])
    assert late.times == before.times  # never a new step time
    assert late.at_risk == (4, 3)
    assert late.survival[0] == pytest.approx(0.75)
    mid = kaplan_meier(base + [rec("z", 2.5, False)])
    # covers the t=2 event only
    assert mid.at_risk == (4, 2)
    assert mid.survival[1] == pytest.approx(0.75 * 0.5)


def test_km_unknown_group_rejected():
    with pytest.raises(ValueError, match="no records"):
        kaplan_meier([rec("a", 1.0, True, "g1")], group="g2")


def test_km_step_table_starts_at_one():
    records = [rec("a", 1.0, True), rec("b", 2.0, False)]
    table = km_step_table(kaplan_meier(records))
    lines = table.strip().splitlines()
    assert lines[0] == "time,at_risk,events,survival"
    assert lines[1] == "0.0,2,0,1.0"
    assert lines[2].startswith("1.0,2,1,")


def test_record_validation():
    with pytest.raises(ValueError, match="nonnegative"):
        rec("a", -1.0, True)
    with pytest.raises(ValueError, match="group label empty"):
        SurvivalRecord(subject_id="a", time=1.0, event=True, group="")


# ----------------------------------------------------------------- logrank

def test_logrank_identical_structure_is_null():
    records = []
    for i, t in enumerate((1.0, 2.0, 3.0)):
        records.append(rec(f"a{i}", t, True, "A"))
        records.append(rec(f"b{i}", t, True, "B"))
    result = logrank_test(records, ("A", "B"))
    assert result.chi_square == pytest.approx(0.0, abs=1e-12)
    assert result.p_value == pytest.approx(1.0, abs=1e-12)
    assert result.degrees_of_freedom == 1


def test_logrank_matches_frozen_reference():
    fx = FIXTURES["logrank20"]
    result = logrank_test(records_from_dicts(fx["records"]), ("A", "B"))
    assert result.chi_square == pytest.approx(fx["chi_square"], abs=1e-4)
    assert result.p_value == pytest.approx(fx["p_value"], abs=1e-4)


def test_logrank_planted_separation_is_significant():
    fx = FIXTURES["logrank30_planted"]
    result = logrank_test(records_from_dicts(fx["records"]), ("early", "late"))
    assert result.chi_square == pytest.approx(fx["chi_square"], abs=1e-4)
    assert result.p_value == pytest.approx(fx["p_value"], rel=1e-4)
    assert result.p_value < 0.05


def test_logrank_group_label_symmetry():
    fx = FIXTURES["logrank20"]
    records = records_from_dicts(fx["records"])
    ab = logrank_test(records, ("A", "B"))
    ba = logrank_test(records, ("B", "A"))
    assert ab.chi_square == pytest.approx(ba.chi_square, rel=1e-12)
    assert ab.p_value == pytest.approx(ba.p_value, rel=1e-12)
    assert ab.observed == (ba.observed[1], ba.observed[0])


def test_logrank_p_value_consistent_with_chi_square():
    fx = FIXTURES["logrank20"]
    result = logrank_test(records_from_dicts(fx["records"]), ("A", "B"))
    assert result.p_value == pytest.approx(
        chi2_sf(result.chi_square, result.degrees_of_freedom), abs=1e-10)


def test_logrank_error_cases():
    with pytest.raises(ValueError, match="has no records"):
        logrank_test([rec("a", 1.0, True, "A")], ("A", "B"))
    censored = [rec("a", 1.0, False, "A"), rec("b", 2.0, False, "B")]
    with pytest.raises(ValueError, match="zero events"):
        logrank_test(censored, ("A", "B"))


# --------------------------------------------------------------------- cox

def test_cox_closed_form_three_subject_instance():
    # score equation reduces to exp(beta)^2 = 2, solved by hand
    records = [rec("s1", 1.0, True), rec("s2", 2.0, True), rec("s3", 3.0, False)]
    result = cox_ph(records, {"x": [0.0, 1.0, 0.0]})
    assert result.converged
    assert result.coefficients[0] == pytest.approx(0.5 * math.log(2.0), abs=1e-8)


def test_cox_breslow_tied_pair_is_zero():
    records = [rec("a", 1.0, True), rec("b", 1.0, True)]
    result = cox_ph(records, {"x": [0.0, 1.0]})
    assert result.converged
    assert result.coefficients[0] == pytest.approx(0.0, abs=1e-10)


def test_cox_matches_frozen_reference():
    fx = FIXTURES["cox30"]
    result = cox_ph(records_from_dicts(fx["records"]), {"x": fx["covariate"]})
    assert result.converged
    assert result.coefficients[0] == pytest.approx(fx["coefficient"], abs=1e-3)
    assert result.standard_errors[0] == pytest.approx(fx["standard_error"], abs=1e-3)
    assert result.p_values[0] == pytest.approx(fx["p_value"], abs=1e-3)


def test_cox_ci_uses_the_95_normal_quantile():
    fx = FIXTURES["cox30"]
    result = cox_ph(records_from_dicts(fx["records"]), {"x": fx["covariate"]})
    b, s = result.coefficients[0], result.standard_errors[0]
    assert result.ci_lower[0] == pytest.approx(b - Z_95 * s, abs=1e-9)
    assert result.ci_upper[0] == pytest.approx(b + Z_95 * s, abs=1e-9)


def test_cox_rejects_constant_covariate():
    records = [rec("a", 1.0, True), rec("b", 2.0, True)]
    with pytest.raises(ValueError, match="constant"):
        cox_ph(records, {"x": [3.0, 3.0]})


def test_cox_requires_events_and_finite_covariates():
    records = [rec("a", 1.0, False), rec("b", 2.0, False)]
    with pytest.raises(ValueError, match="at least one event"):
        cox_ph(records, {"x": [0.0, 1.0]})
    records = [rec("a", 1.0, True), rec("b", 2.0, False)]
    with pytest.raises(ValueError, match="finite"):
        cox_ph(records, {"x": [0.0, math.inf]})
    with pytest.raises(ValueError, match="has 1 values"):
        cox_ph(records, {"x": [0.0]})


def test_cox_perfect_separation_reported_not_hidden():
    records = [rec("a", 1.0, True), rec("b", 2.0, False)]
    result = cox_ph(records, {"x": [1.0, 0.0]})
    assert not result.converged
    assert any("separation" in w or "monotone" in w for w in result.warnings)


def test_cox_singular_information_names_a_covariate():
    fx = FIXTURES["cox30"]
    records = records_from_dicts(fx["records"])
    duplicated = {"x": fx["covariate"], "x_copy": list(fx["covariate"])}
    with pytest.raises(ValueError, match="singular information"):
        cox_ph(records, duplicated)


def test_cox_gradient_matches_finite_differences():
    rng = random.Random(9)
    for _ in range(5):
        n = rng.randint(6, 12)
        records = [rec(f"s{i}", round(rng.uniform(1.0, 20.0), 1), rng.random() < 0.7)
                   for i in range(n)]
        if not any(r.event for r in records):
            records[0] = rec("s0", records[0].time, True)
        x = np.array([[rng.uniform(-1, 1), rng.uniform(-1, 1)] for _ in range(n)])
        times = np.array([r.time for r in records])
        events = np.array([r.event for r in records])
        beta = np.array([rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)])
        _, grad, _ = partial_loglik(beta, times, events, x)
        h = 1e-6
        for j in range(2):
            e = np.zeros(2)
            e[j] = h
            up, _, _ = partial_loglik(beta + e, times, events, x)
            down, _, _ = partial_loglik(beta - e, times, events, x)
            fd = (up - down) / (2 * h)
            assert grad[j] == pytest.approx(fd, rel=1e-6, abs=1e-8)


def test_cox_location_and_scale_invariance():
    fx = FIXTURES["cox30"]
    records = records_from_dicts(fx["records"])
    base = cox_ph(records, {"x": fx["covariate"]})
    shifted = cox_ph(records, {"x": [v + 10.0 for v in fx["covariate"]]})
    assert shifted.coefficients[0] == pytest.approx(base.coefficients[0], abs=1e-8)
    scaled = cox_ph(records, {"x": [4.0 * v for v in fx["covariate"]]})
    assert scaled.coefficients[0] == pytest.approx(base.coefficients[0] / 4.0, abs=1e-8)


def test_cox_config_validation():
    with pytest.raises(ValueError):
        CoxConfig(tol=0.0)
    with pytest.raises(ValueError):
        CoxConfig(max_iter=0)
    with pytest.raises(ValueError, match="tie method"):
        CoxConfig(tie_method="efron")


# ---------------------------------------------------------- stratification

def test_median_split_ties_go_low():
    strat = stratify_joint({"a": 1.0, "b": 2.0, "c": 3.0, "d": 4.0},
                           {"a": 4.0, "b": 3.0, "c": 2.0, "d": 1.0})
    # median 2.5 on both markers
    assert strat.assignments["a"] == "marker_a_low/marker_b_high"
    assert strat.assignments["d"] == "marker_a_high/marker_b_low"
    # exact tie at the cut goes to the low side
    tied = stratify_joint({"a": 1.0, "b": 2.0, "c": 2.0, "d": 4.0},
                          {"a": 1.0, "b": 2.0, "c": 3.0, "d": 4.0})
    assert tied.cut_a == 2.0
    assert tied.assignments["b"].startswith("marker_a_low")
    assert tied.assignments["c"].startswith("marker_a_low")


def test_fixed_threshold_zero_puts_all_positive_high():
    values = {"a": 0.1, "b": 5.0, "c": 2.0}
    strat = stratify_joint(values, values, rule="fixed", threshold_a=0.0, threshold_b=0.0)
    assert set(strat.assignments.values()) == {"marker_a_high/marker_b_high"}


def test_eight_subject_two_by_two_partition():
    fabp5 = {f"p{i}": float(v) for i, v in enumerate((1, 2, 3, 4, 5, 6, 7, 8))}
    tls = {f"p{i}": float(v) for i, v in enumerate((8, 1, 7, 2, 6, 3, 5, 4))}
    strat = stratify_joint(fabp5, tls, marker_a_name="FABP5", marker_b_name="TLS")
    counts = strat.group_counts()
    # cuts at 4.5: FABP5 high = p4..p7, TLS high (>4.5) = p0,p2,p4,p6
    assert counts == {
        "FABP5_low/TLS_high": 2,   # p0, p2
        "FABP5_low/TLS_low": 2,    # p1, p3
        "FABP5_high/TLS_high": 2,  # p4, p6
        "FABP5_high/TLS_low": 2,   # p5, p7
    }
    assert sum(counts.values()) == 8
    assert len(strat.assignments) == 8


def test_contrast_collapses_to_two_groups():
    fabp5 = {f"p{i}": float(i) for i in range(8)}
    tls = {f"p{i}": float(7 - i) for i in range(8)}
    strat = stratify_joint(fabp5, tls, marker_a_name="FABP5", marker_b_name="TLS",
                           contrast="FABP5_high/TLS_low")
    assert set(strat.assignments.values()) == {"FABP5_high/TLS_low", "rest"}
    with pytest.raises(ValueError, match="not a joint label"):
        stratify_joint(fabp5, tls, contrast="bogus")


def test_degenerate_and_mismatched_inputs_rejected():
    same = {"a": 2.0, "b": 2.0, "c": 2.0}
    varying = {"a": 1.0, "b": 2.0, "c": 3.0}
    with pytest.raises(ValueError, match="degenerate median"):
        stratify_joint(same, varying)
    with pytest.raises(ValueError, match="subject sets differ"):
        stratify_joint({"a": 1.0}, {"b": 1.0})
    with pytest.raises(ValueError, match="threshold"):
        stratify_joint(varying, varying, rule="fixed")
    with pytest.raises(ValueError, match="unknown cut rule"):
        stratify_joint(varying, varying, rule="tertile")


def test_quartile_rule_marks_top_quarter():
    values = {f"s{i}": float(i) for i in range(8)}
    strat = stratify_joint(values, values, rule="quartile")
    high = [s for s, label in strat.assignments.items()
            if label == "marker_a_high/marker_b_high"]
    assert set(high) == {"s6", "s7"}


# ------------------------------------------------------------ registry/CSV

def test_registry_lists_the_four_tools_plus_stub():
    registry = default_registry()
    assert registry.list_names() == [
        "concordance_index", "cox_ph", "kaplan_meier", "logrank_test", "stratify_joint"]


def test_registry_alias_resolves_km():
    registry = default_registry()
    assert registry.resolve("survival_km").name == "kaplan_meier"
    fx = FIXTURES["km20"]
    via_registry = registry.invoke("survival_km", records=fx["records"])
    direct = kaplan_meier(records_from_dicts(fx["records"])).to_dict()
    assert via_registry == direct


def test_registry_duplicate_and_stub_behavior():
    registry = default_registry()
    with pytest.raises(ValueError, match="already registered"):
        register_tools(registry)
    with pytest.raises(NotImplementedError, match="stub"):
        registry.invoke("concordance_index", records=[], risk_scores=[])
    with pytest.raises(KeyError, match="no tool named"):
        registry.resolve("mystery_tool")


def test_descriptor_round_trips_through_json():
    descriptor = ToolDescriptor(
        name="demo", description="d", input_schema={"a": 1}, output_schema={"b": 2})
    clone = json.loads(json.dumps(descriptor.to_dict()))
    assert clone["name"] == "demo"
    assert clone["resource_bounds"]["max_seconds"] == 60
    registry = ToolRegistry()
    registry.register(descriptor)
    assert json.loads(json.dumps(registry.to_dict()))["demo"]["implemented"] is True


def test_csv_loader_reads_covariates(tmp_path):
    path = tmp_path / "data.csv"
    path.write_text(
        "subject_id,time,event,group,age\n"
        "s1,5.0,1,A,61\n"
        "s2,7.5,0,B,58\n")
    dataset = load_survival_csv(path)
    assert [r.subject_id for r in dataset.records] == ["s1", "s2"]
    assert dataset.records[0].event is True
    assert dataset.covariates == {"age": [61.0, 58.0]}
    assert dataset.groups() == ["A", "B"]


def test_csv_loader_flags_bad_rows(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("subject_id,time,event\ns1,abc,1\n")
    with pytest.raises(ValueError, match="line 2"):
        load_survival_csv(path)
    path.write_text("subject_id,time\ns1,1\n")
    with pytest.raises(ValueError, match="missing required columns: event"):
        load_survival_csv(path)


# --------------------------------------------------------------- cli/plots

def _write_cohort_csv(path):
    fx = FIXTURES["logrank20"]
    lines = ["subject_id,time,event,group"]
    for r in fx["records"]:
        lines.append(f"{r['subject_id']},{r['time']},{1 if r['event'] else 0},{r['group']}")
    path.write_text("\n".join(lines) + "\n")


def test_cli_km_writes_tables_and_plot(tmp_path):
    data = tmp_path / "cohort.csv"
    _write_cohort_csv(data)
    out = tmp_path / "artifacts"
    runner = CliRunner()
    result = runner.invoke(survival_cli, ["km", "--data", str(data), "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert (out / "km_A.csv").exists()
    assert (out / "km_B.csv").exists()
    svg = (out / "km_curves.svg").read_text()
    assert svg.lstrip().startswith("<?xml")


def test_cli_logrank_and_cox(tmp_path):
    data = tmp_path / "cohort.csv"
    _write_cohort_csv(data)
    runner = CliRunner()
    result = runner.invoke(survival_cli, ["logrank", "--data", str(data), "--groups", "A,B"])
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output)
    assert payload["chi_square"] == pytest.approx(FIXTURES["logrank20"]["chi_square"], abs=1e-6)

    fx = FIXTURES["cox30"]
    cox_csv = tmp_path / "cox.csv"
    lines = ["subject_id,time,event,group,x"]
    for r, x in zip(fx["records"], fx["covariate"]):
        lines.append(f"{r['subject_id']},{r['time']},{1 if r['event'] else 0},all,{x}")
    cox_csv.write_text("\n".join(lines) + "\n")
    result = runner.invoke(survival_cli, ["cox", "--data", str(cox_csv), "--covariates", "x"])
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output)
    assert payload["coefficients"][0] == pytest.approx(fx["coefficient"], abs=1e-6)


def test_cli_stratify(tmp_path):
    markers = tmp_path / "markers.csv"
    markers.write_text(
        "subject_id,FABP5,TLS\n" +
        "\n".join(f"p{i},{i},{7 - i}" for i in range(8)) + "\n")
    runner = CliRunner()
    result = runner.invoke(survival_cli, [
        "stratify", "--markers", str(markers), "--marker-a", "FABP5",
        "--marker-b", "TLS", "--contrast", "FABP5_high/TLS_low"])
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output)
    assert set(payload["assignments"].values()) == {"FABP5_high/TLS_low", "rest"}


def test_km_plot_rejects_empty_and_renders_groups(tmp_path):
    with pytest.raises(ValueError, match="no curves"):
        km_plot({}, tmp_path / "x.svg")
    fx = FIXTURES["logrank20"]
    records = records_from_dicts(fx["records"])
    curves = {g: kaplan_meier(records, group=g) for g in ("A", "B")}
    out = km_plot(curves, tmp_path / "km.svg")
    text = out.read_text()
    assert "n=10" in text
