"""Regenerates tests/fixtures/*.json by driving the real orchestrator service.

Every payload stored here is a verbatim HTTP response body from the backend,
so the display-parity tests compare rendered values against genuine API
output. Run from frontend/: python3 scripts/gen_fixtures.py
"""

import json
import sys
import tempfile
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parents[2]
sys.path.insert(0, str(REPO_ROOT / "src"))

from fastapi.testclient import TestClient  # noqa: E402

from sage.debate import (  # noqa: E402
    JUDGE, PROVER, VERIFIER, CriticAssessment, ScriptedCritic, deliberate,
)
from sage.pipeline import PipelineConfig, RunStore  # noqa: E402
from sage.pipeline.service import make_app  # noqa: E402

OUT = Path(__file__).resolve().parents[1] / "tests" / "fixtures"


def fresh_client(config):
    store = RunStore(tempfile.mkdtemp())
    return TestClient(make_app(store, config=config))


def assessment(role, score, confidence=0.9, flags=()):
    return CriticAssessment(role=role, score=score, confidence=confidence,
                            claims=(f"{role} position",), citations=(),
                            specious_flags=tuple(flags))


def three_round_deliberate(hypothesis, iteration):
    """Scripted critics whose initial spread forces exactly three real rounds.

    sigma starts at sqrt(6) and halves per equal-confidence round, crossing
    the 0.5 convergence bound only after round three. The round-2 Verifier
    flag is not upheld by the Judge, so it renders as a marker without a
    penalty. Final mean lands above the novelty threshold.
    """
    critics = {
        PROVER: ScriptedCritic([
            assessment(PROVER, 4.0),
            assessment(PROVER, 7.5), assessment(PROVER, 7.5), assessment(PROVER, 7.5),
        ]),
        VERIFIER: ScriptedCritic([
            assessment(VERIFIER, 10.0),
            assessment(VERIFIER, 7.5),
            assessment(VERIFIER, 7.5, flags=("statistical power claim",)),
            assessment(VERIFIER, 7.5),
        ]),
        JUDGE: ScriptedCritic([
            assessment(JUDGE, 7.0),
            assessment(JUDGE, 7.5), assessment(JUDGE, 7.5), assessment(JUDGE, 7.5),
        ]),
    }
    return deliberate(hypothesis.statement, critics, hypothesis_id=hypothesis.id)


def capture_artifacts(client, run):
    artifacts = {}
    for name in (run.get("validation") or {}).get("artifacts", []):
        resp = client.get(f"/runs/{run['run_id']}/artifacts/{name}")
        artifacts[name] = {
            "content_type": resp.headers["content-type"],
            "body": resp.text,
        }
    return artifacts


def capture_completed():
    client = fresh_client(PipelineConfig(seed=0))
    run = client.post("/runs", json={
        "query": "Does FABP5 expression drive progression in bladder cancer?",
        "mode": "gp",
    }).json()["run"]
    rid = run["run_id"]
    envelope = client.post(f"/runs/{rid}/review", json={"action": "approve"}).json()
    brief = client.get("/runs").json()["runs"][0]
    return {
        "envelope": envelope,
        "artifacts": capture_artifacts(client, envelope["run"]),
        "brief": brief,
    }


def capture_debate():
    config = PipelineConfig(seed=3, deliberate=three_round_deliberate)
    client = fresh_client(config)
    run = client.post("/runs", json={
        "query": "Can tertiary lymphoid structures stratify response to checkpoint blockade?",
        "mode": "gp",
    }).json()["run"]
    rid = run["run_id"]
    envelope = client.post(f"/runs/{rid}/review", json={"action": "approve"}).json()
    verdict = envelope["run"]["verdicts"]["novelty"]
    assert verdict["rounds_used"] == 3, verdict["rounds_used"]
    assert verdict["debate_occurred"] is True
    round_events = [e for e in verdict["transcript"] if e["round"] >= 1]
    assert len(round_events) == 9, len(round_events)
    brief = client.get("/runs").json()["runs"][0]
    return {
        "envelope": envelope,
        "artifacts": capture_artifacts(client, envelope["run"]),
        "brief": brief,
    }


def capture_review_cycle():
    client = fresh_client(PipelineConfig(seed=7))
    awaiting = client.post("/runs", json={
        "query": "Is intratumoral collagen remodeling prognostic after radical cystectomy?",
        "mode": "cp",
    }).json()
    rid = awaiting["run"]["run_id"]
    assert awaiting["run"]["status"] == "awaiting_review"
    pending = client.get(f"/runs/{rid}/pending-review").json()
    brief_before = client.get("/runs").json()["runs"][0]

    edited = ("Edited: collagen fiber alignment, not density, stratifies "
              "recurrence risk after radical cystectomy.")
    revise = client.post(f"/runs/{rid}/review", json={
        "action": "revise", "edited_statement": edited, "note": "sharpen the exposure",
    })
    assert revise.status_code == 200
    conflict = client.post(f"/runs/{rid}/review", json={"action": "approve"})
    assert conflict.status_code == 409
    revised = client.get(f"/runs/{rid}").json()
    pending_after = client.get(f"/runs/{rid}/pending-review")
    assert pending_after.status_code == 404
    brief_after = client.get("/runs").json()["runs"][0]
    return {
        "artifacts": capture_artifacts(client, revised["run"]),
        "awaiting": awaiting,
        "pending": pending,
        "edited_statement": edited,
        "revise_response": revise.json(),
        "conflict_status": conflict.status_code,
        "conflict_response": conflict.json(),
        "revised": revised,
        "pending_after_status": pending_after.status_code,
        "pending_after_response": pending_after.json(),
        "brief_before": brief_before,
        "brief_after": brief_after,
    }


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    fixtures = {
        "complete.json": capture_completed(),
        "debate.json": capture_debate(),
        "review.json": capture_review_cycle(),
    }
    for name, payload in fixtures.items():
        path = OUT / name
        path.write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n",
                        encoding="utf-8")
        print(f"wrote {path.relative_to(REPO_ROOT)}")


if __name__ == "__main__":
    main()
