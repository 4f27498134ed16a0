"""Generate frozen reference fixtures for the survival test suite.

Run once by hand (requires statsmodels and scipy, which the package itself
does not depend on); the JSON it writes is committed and the tests compare
against those frozen numbers, never against a live library.

    python3 scripts/gen_survival_fixtures.py
"""

from __future__ import annotations

import json
import random
from pathlib import Path

import numpy as np
from scipy import stats as scipy_stats
from statsmodels.duration.hazard_regression import PHReg
from statsmodels.duration.survfunc import SurvfuncRight, survdiff

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "survival_reference.json"


def km20():
    rng = random.Random(101)
    records = []
    for i in range(20):
        time = round(rng.expovariate(1.0 / 12.0) + 0.5, 1)
        event = rng.random() < 0.7
        records.append({"subject_id": f"s{i:02d}", "time": time, "event": event, "group": "g"})
    times = np.array([r["time"] for r in records])
    status = np.array([1 if r["event"] else 0 for r in records])
    sf = SurvfuncRight(times, status)
    return {
        "records": records,
        "event_times": [float(t) for t in sf.surv_times],
        "survival": [float(p) for p in sf.surv_prob],
    }


def logrank20():
    rng = random.Random(202)
    records = []
    for i in range(10):
        records.append({"subject_id": f"a{i}", "time": round(rng.uniform(2, 30), 1),
                        "event": rng.random() < 0.8, "group": "A"})
    for i in range(10):
        records.append({"subject_id": f"b{i}", "time": round(rng.uniform(5, 40), 1),
                        "event": rng.random() < 0.6, "group": "B"})
    times = np.array([r["time"] for r in records])
    status = np.array([1 if r["event"] else 0 for r in records])
    group = np.array([r["group"] for r in records])
    chisq, pvalue = survdiff(times, status, group)
    return {"records": records, "chi_square": float(chisq), "p_value": float(pvalue)}


def logrank30_planted():
    records = []
    for i in range(15):
        records.append({"subject_id": f"early{i}", "time": float(i + 1),
                        "event": True, "group": "early"})
    for i in range(15):
        records.append({"subject_id": f"late{i}", "time": float(40 + 2 * i),
                        "event": i % 3 != 0, "group": "late"})
    times = np.array([r["time"] for r in records])
    status = np.array([1 if r["event"] else 0 for r in records])
    group = np.array([r["group"] for r in records])
    chisq, pvalue = survdiff(times, status, group)
    return {"records": records, "chi_square": float(chisq), "p_value": float(pvalue)}


def cox30():
    rng = random.Random(303)
    records = []
    covariate = []
    for i in range(30):
        x = 1.0 if i < 15 else 0.0
        base = rng.expovariate(1.0 / 20.0)
        time = round(base * (0.5 if x else 1.0) + 0.5, 1)
        event = rng.random() < 0.75
        records.append({"subject_id": f"c{i:02d}", "time": time, "event": event, "group": "all"})
        covariate.append(x)
    times = np.array([r["time"] for r in records])
    status = np.array([1 if r["event"] else 0 for r in records])
    exog = np.array(covariate).reshape(-1, 1)
    fit = PHReg(times, exog, status=status, ties="breslow").fit()
    return {
        "records": records,
        "covariate": covariate,
        "coefficient": float(fit.params[0]),
        "standard_error": float(fit.bse[0]),
        "p_value": float(fit.pvalues[0]),
    }


def chi2_grid():
    cases = []
    for dof in (1, 2, 3, 5, 10):
        for x in (0.0, 0.31, 1.0, 2.5, 3.841458820694124, 6.634896601021215, 15.0, 40.0):
            cases.append({"x": x, "dof": dof, "sf": float(scipy_stats.chi2.sf(x, dof))})
    return cases


def main():
    fixture = {
        "km20": km20(),
        "logrank20": logrank20(),
        "logrank30_planted": logrank30_planted(),
        "cox30": cox30(),
        "chi2_sf": chi2_grid(),
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(fixture, indent=2, sort_keys=True) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
