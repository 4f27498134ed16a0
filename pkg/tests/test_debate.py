"""Deliberation protocol, critic backends, and tier benchmark tests."""

import json
import math
import random

import pytest
from click.testing import CliRunner

from sage.debate import (
    JUDGE,
    PROVER,
    TIER_CONTRADICTIONS,
    TIER_RANGES,
    VERIFIER,
    CallableCritic,
    Citation,
    CriticAssessment,
    DebateBackendError,
    DebateConfig,
    ProbeVerifier,
    ScriptedCritic,
    deliberate,
    initial_assess,
    make_tier_dataset,
    population_sigma,
    run_benchmark,
    run_round,
    should_debate,
    synthetic_critics,
)
from sage.debate.backends import scripted_set
from sage.debate.cli import main as debate_cli

HYP = {"id": "h-1", "statement": "FN1 upregulation drives glomerulosclerosis"}


def A(role, score, conf=1.0, claims=(), cites=(), flags=()):
    return CriticAssessment(role=role, score=score, confidence=conf,
                            claims=tuple(claims), citations=tuple(cites),
                            specious_flags=tuple(flags))


def critics_for(prover, verifier, judge):
    return scripted_set([A(PROVER, *p) if isinstance(p, tuple) else p for p in prover],
                        [A(VERIFIER, *v) if isinstance(v, tuple) else v for v in verifier],
                        [A(JUDGE, *j) if isinstance(j, tuple) else j for j in judge])


# ---------------------------------------------------------------- sigma/gate

def test_sigma_of_equal_scores_is_zero():
    assert population_sigma([5.0, 5.0, 5.0]) == 0.0


def test_sigma_uses_population_divisor():
    # mean 6, squared deviations 4+1+1, divided by n=3
    assert population_sigma([8.0, 5.0, 5.0]) == pytest.approx(math.sqrt(2.0), abs=1e-15)


def test_sigma_of_single_value_is_zero():
    assert population_sigma([7.3]) == 0.0


def test_gate_is_strict_at_the_threshold():
    assert not should_debate(1.0, 1.0)
    assert should_debate(math.nextafter(1.0, 2.0), 1.0)
    assert not should_debate(0.999999, 1.0)


def test_gate_honours_custom_threshold():
    assert should_debate(0.8, 0.5)
    assert not should_debate(0.5, 0.5)


# ------------------------------------------------------------ round updates

def test_round_moves_scores_halfway_to_weighted_mean():
    critics = critics_for(
        [(9.0, 0.9), (9.0, 1.0)], [(3.0, 0.9), (3.0, 1.0)], [(6.0, 0.9), (6.0, 1.0)]
    )
    state = initial_assess(HYP, critics, hypothesis_id="h-1")
    assert state.scores == {PROVER: 9.0, VERIFIER: 3.0, JUDGE: 6.0}
    run_round(state, critics, HYP)
    # weighted mean 6.0 at equal confidence; every score moves halfway
    assert state.scores[PROVER] == pytest.approx(7.5)
    assert state.scores[VERIFIER] == pytest.approx(4.5)
    assert state.scores[JUDGE] == pytest.approx(6.0)
    assert state.round == 1


def test_confidence_weighting_follows_the_confident_critic():
    critics = critics_for(
        [(9.0, 0.9), (9.0, 1.0)], [(3.0, 0.9), (3.0, 0.0)], [(6.0, 0.9), (6.0, 0.0)]
    )
    state = initial_assess(HYP, critics, hypothesis_id="h-1")
    run_round(state, critics, HYP)
    # only the Prover carries weight, so the target mean is 9
    assert state.scores[PROVER] == pytest.approx(9.0)
    assert state.scores[VERIFIER] == pytest.approx(6.0)
    assert state.scores[JUDGE] == pytest.approx(7.5)


def test_zero_total_confidence_falls_back_to_plain_mean():
    critics = critics_for(
        [(9.0, 0.9), (9.0, 0.0)], [(3.0, 0.9), (3.0, 0.0)], [(6.0, 0.9), (6.0, 0.0)]
    )
    state = initial_assess(HYP, critics, hypothesis_id="h-1")
    run_round(state, critics, HYP)
    assert state.scores[PROVER] == pytest.approx(7.5)
    assert state.scores[VERIFIER] == pytest.approx(4.5)


def test_upheld_flag_costs_the_prover_delta():
    critics = critics_for(
        [(9.0, 0.9, ("c0", "c1")), (9.0, 1.0)],
        [(3.0, 0.9), A(VERIFIER, 3.0, 1.0, flags=(0,))],
        [(6.0, 0.9), A(JUDGE, 6.0, 1.0, flags=(0,))],
    )
    state = initial_assess(HYP, critics, hypothesis_id="h-1")
    run_round(state, critics, HYP)
    assert state.scores[PROVER] == pytest.approx(5.5)  # 7.5 - 2.0
    assert len(state.penalties) == 1
    record = state.penalties[0]
    assert record["round"] == 1 and record["flag"] == 0
    assert record["delta"] == 2.0 and record["prover_score"] == pytest.approx(5.5)


def test_only_flags_upheld_by_both_critics_count():
    critics = critics_for(
        [(9.0, 0.9), (9.0, 1.0)],
        [(3.0, 0.9), A(VERIFIER, 3.0, 1.0, flags=(0, 1))],
        [(6.0, 0.9), A(JUDGE, 6.0, 1.0, flags=(0, 2))],
    )
    state = initial_assess(HYP, critics, hypothesis_id="h-1")
    run_round(state, critics, HYP)
    assert [p["flag"] for p in state.penalties] == [0]
    assert state.scores[PROVER] == pytest.approx(5.5)


def test_judge_flags_without_verifier_backing_do_nothing():
    critics = critics_for(
        [(9.0, 0.9), (9.0, 1.0)],
        [(3.0, 0.9), (3.0, 1.0)],
        [(6.0, 0.9), A(JUDGE, 6.0, 1.0, flags=(0, 1))],
    )
    state = initial_assess(HYP, critics, hypothesis_id="h-1")
    run_round(state, critics, HYP)
    assert state.penalties == []
    assert state.scores[PROVER] == pytest.approx(7.5)


def test_penalties_clamp_at_the_score_floor():
    critics = critics_for(
        [(3.0, 0.9), (2.0, 1.0)],
        [(3.0, 0.9), A(VERIFIER, 2.0, 1.0, flags=(0, 1))],
        [(3.0, 0.9), A(JUDGE, 2.0, 1.0, flags=(0, 1))],
    )
    state = initial_assess(HYP, critics, hypothesis_id="h-1")
    run_round(state, critics, HYP)
    # update lands at 2.5; the first flag hits the floor (2.5 - 2 -> 1.0),
    # the second stays clamped there
    assert state.scores[PROVER] == 1.0
    assert [p["prover_score"] for p in state.penalties] == [1.0, 1.0]


def test_round_refuses_terminated_state():
    critics = critics_for([(9.0, 0.9)], [(3.0, 0.9)], [(6.0, 0.9)])
    state = initial_assess(HYP, critics, hypothesis_id="h-1")
    state.terminated_reason = "converged"
    with pytest.raises(ValueError, match="terminated"):
        run_round(state, critics, HYP)


def test_round_events_arrive_in_protocol_order():
    critics = critics_for(
        [(9.0, 0.9, ("c0",)), (9.0, 1.0)],
        [(3.0, 0.9), A(VERIFIER, 3.0, 1.0, flags=(0,))],
        [(6.0, 0.9), A(JUDGE, 6.0, 1.0, flags=(0,))],
    )
    state = initial_assess(HYP, critics, hypothesis_id="h-1")
    run_round(state, critics, HYP)
    kinds = [(e.round, e.role, e.event_type) for e in state.transcript]
    assert kinds == [
        (0, PROVER, "initial"), (0, VERIFIER, "initial"), (0, JUDGE, "initial"),
        (1, PROVER, "proposal"), (1, VERIFIER, "counter"), (1, JUDGE, "synthesis"),
        (1, PROVER, "penalty"),
    ]


def test_backend_failure_mid_round_preserves_scores():
    def explode(hypothesis, role, transcript, probe):
        raise ConnectionError("backend down")

    critics = critics_for([(9.0, 0.9), (8.0, 1.0)], [(3.0, 0.9)], [(6.0, 0.9)])
    critics[VERIFIER] = CallableCritic(explode)
    # rebuild: verifier must still answer the initial call
    critics_init = critics_for([(9.0, 0.9), (8.0, 1.0)], [(3.0, 0.9)], [(6.0, 0.9), (6.0, 1.0)])
    state = initial_assess(HYP, critics_init, hypothesis_id="h-1")
    before = dict(state.scores)
    critics_init[VERIFIER] = CallableCritic(explode)
    with pytest.raises(DebateBackendError) as err:
        run_round(state, critics_init, HYP)
    assert err.value.role == VERIFIER
    assert state.scores == before
    assert state.round == 0
    # the Prover's completed proposal stays on the record
    assert [e.event_type for e in state.transcript] == ["initial"] * 3 + ["proposal"]


def test_backend_answering_for_the_wrong_role_is_rejected():
    critics = critics_for([(9.0, 0.9)], [(3.0, 0.9)], [(6.0, 0.9)])
    critics[PROVER] = CallableCritic(lambda h, r, t, p: A(JUDGE, 5.0))
    with pytest.raises(DebateBackendError) as err:
        initial_assess(HYP, critics, hypothesis_id="h-1")
    assert err.value.role == PROVER


# ------------------------------------------------------- contraction limits

def test_any_no_penalty_round_contracts_sigma_by_one_minus_eta():
    critics = critics_for(
        [(2.7, 0.9), (8.0, 0.3)], [(6.1, 0.9), (2.0, 0.9)], [(9.3, 0.9), (5.0, 0.6)]
    )
    state = initial_assess(HYP, critics, hypothesis_id="h-1")
    sigma0 = state.sigma
    run_round(state, critics, HYP)
    # every score moves toward one shared target, so deviations scale by 1-eta
    assert state.sigma == pytest.approx(0.5 * sigma0, rel=1e-12)


def test_eta_controls_the_contraction_rate():
    critics = critics_for(
        [(2.7, 0.9), (8.0, 0.3)], [(6.1, 0.9), (2.0, 0.9)], [(9.3, 0.9), (5.0, 0.6)]
    )
    state = initial_assess(HYP, critics, hypothesis_id="h-1")
    sigma0 = state.sigma
    run_round(state, critics, HYP, DebateConfig(eta=0.25))
    assert state.sigma == pytest.approx(0.75 * sigma0, rel=1e-12)


def test_convergence_bound_is_strict():
    critics = critics_for(
        [(4.0, 0.9), (6.0, 1.0)], [(6.0, 0.9), (6.0, 1.0)], [(8.0, 0.9), (6.0, 1.0)]
    )
    state = initial_assess(HYP, critics, hypothesis_id="h-1")
    run_round(state, critics, HYP, DebateConfig(convergence=math.sqrt(2.0 / 3.0)))
    # post-round scores (5,6,7) give sigma exactly sqrt(2/3); strictly-below
    # means the debate keeps going
    assert state.sigma == math.sqrt(2.0 / 3.0)
    assert state.terminated_reason is None


# --------------------------------------------------------------- deliberate

def test_low_disagreement_skips_the_debate():
    critics = critics_for([(6.0, 0.9)], [(6.5, 0.9)], [(7.0, 0.9)])
    verdict = deliberate(HYP, critics, hypothesis_id="h-1")
    assert not verdict.debate_occurred
    assert verdict.rounds_used == 0
    assert verdict.terminated_reason == "no_debate_needed"
    assert verdict.final_score == pytest.approx(6.5)
    assert len(verdict.transcript) == 3


def test_verdict_is_the_unweighted_mean_after_penalties():
    critics = critics_for(
        [(9.0, 0.9, ("c0",)), (9.0, 1.0)],
        [(3.0, 0.9), A(VERIFIER, 3.0, 1.0, flags=(0,))],
        [(6.0, 0.9), A(JUDGE, 6.0, 1.0, flags=(0,))],
    )
    verdict = deliberate(HYP, critics, DebateConfig(max_rounds=1), hypothesis_id="h-1")
    assert verdict.final_score == pytest.approx((5.5 + 4.5 + 6.0) / 3.0)
    assert verdict.rounds_used == 1
    assert verdict.penalties_applied and verdict.penalties_applied[0]["flag"] == 0


def test_max_rounds_caps_the_debate():
    critics = critics_for(
        [(1.0, 0.9), (5.5, 1.0), (5.5, 1.0)],
        [(5.5, 0.9), (5.5, 1.0), (5.5, 1.0)],
        [(10.0, 0.9), (5.5, 1.0), (5.5, 1.0)],
    )
    verdict = deliberate(HYP, critics, DebateConfig(max_rounds=2), hypothesis_id="h-1")
    # sigma starts at 3.674 and halves per round: 1.837, 0.918 -> still >= 0.5
    assert verdict.rounds_used == 2
    assert verdict.terminated_reason == "max_rounds"
    assert verdict.sigma_final == pytest.approx(verdict.sigma_initial / 4.0, rel=1e-12)


def test_contested_fabrication_story():
    """A confident proposal collapses once refuting references pile up."""
    refs = tuple(Citation(id=f"ref-{i}", locator="doi:10/x", stance="refutes") for i in range(8))
    critics = critics_for(
        [(6.2, 0.8, ("c0", "c1", "c2")), (5.0, 0.5), (1.0, 0.3), (1.0, 0.3)],
        [(2.1, 0.9), A(VERIFIER, 1.2, 0.95, cites=refs, flags=(0, 1, 2)),
         (1.1, 0.95), (1.2, 0.95)],
        [(6.75, 0.85), A(JUDGE, 2.0, 0.9, flags=(0, 1, 2)), (1.3, 0.9), (1.2, 0.95)],
    )
    verdict = deliberate(HYP, critics, hypothesis_id="contested")
    # initial reads 6.2 / 2.1 / 6.75 put sigma near 2.07 (a two-critic read
    # of the same numbers gives 2.05; the three-critic population value wins)
    assert verdict.sigma_initial == pytest.approx(2.0745816177940286, abs=1e-9)
    assert verdict.debate_occurred
    counter = next(e for e in verdict.transcript if e.event_type == "counter")
    assert sum(1 for c in counter.citations if c.stance == "refutes") == 8
    assert len(verdict.penalties_applied) == 3
    assert verdict.rounds_used == 3
    assert abs(verdict.final_score - 1.5) <= 0.05
    assert verdict.final_score == pytest.approx(1.5237966315805256, abs=1e-9)


def test_established_breakthrough_story():
    """Methodologically solid work converges high in two rounds."""
    critics = critics_for(
        [(9.9, 0.9), (9.9, 1.0), (9.8, 1.0)],
        [(6.75, 0.9), (9.9, 1.0), (9.8, 1.0)],
        [(8.85, 0.9), (9.9, 1.0), (9.8, 1.0)],
    )
    verdict = deliberate(HYP, critics, hypothesis_id="breakthrough")
    assert verdict.sigma_initial == pytest.approx(1.3095800853708794, abs=1e-9)
    assert verdict.rounds_used == 2
    assert verdict.terminated_reason == "converged"
    assert verdict.penalties_applied == ()
    assert verdict.final_score == pytest.approx(9.5, abs=1e-9)


def test_verdict_serializes_to_plain_json():
    critics = critics_for([(6.0, 0.9)], [(6.5, 0.9)], [(7.0, 0.9)])
    verdict = deliberate(HYP, critics, hypothesis_id="h-1")
    payload = json.loads(json.dumps(verdict.to_dict()))
    assert payload["hypothesis_id"] == "h-1"
    assert payload["final_score"] == pytest.approx(6.5)
    assert len(payload["transcript"]) == 3
    assert payload["transcript"][0]["event_type"] == "initial"


def test_thousand_randomized_debates_respect_invariants():
    rng = random.Random(20240817)
    config = DebateConfig()
    for case in range(1000):
        def make_backend(role, rng_seed=rng.random()):
            local = random.Random(rng_seed)

            def fn(hypothesis, role_, transcript, probe):
                claims = tuple(f"c{i}" for i in range(local.randint(0, 3)))
                flags = tuple(sorted(local.sample(range(4), local.randint(0, 2))))
                return CriticAssessment(
                    role=role_, score=local.uniform(1.0, 10.0),
                    confidence=local.uniform(0.0, 1.0),
                    claims=claims, specious_flags=flags)
            return CallableCritic(fn)

        critics = {r: make_backend(r) for r in (PROVER, VERIFIER, JUDGE)}
        verdict = deliberate(HYP, critics, config, hypothesis_id=f"case-{case}")
        assert 1.0 <= verdict.final_score <= 10.0
        assert all(1.0 <= s <= 10.0 for s in verdict.critic_scores.values())
        assert verdict.rounds_used <= config.max_rounds
        assert verdict.terminated_reason in {"no_debate_needed", "converged", "max_rounds"}
        expected_events = 3 + 3 * verdict.rounds_used + len(verdict.penalties_applied)
        assert len(verdict.transcript) == expected_events
        if verdict.debate_occurred and not verdict.penalties_applied:
            shrink = (1.0 - config.eta) ** verdict.rounds_used
            assert verdict.sigma_final == pytest.approx(verdict.sigma_initial * shrink, rel=1e-9)


def test_scripted_critic_replays_then_runs_dry():
    critic = ScriptedCritic([A(PROVER, 4.0), A(PROVER, 5.0)])
    assert critic.assess(HYP, PROVER, [], None).score == 4.0
    assert critic.assess(HYP, PROVER, [], None).score == 5.0
    with pytest.raises(RuntimeError, match="no assessments left"):
        critic.assess(HYP, PROVER, [], None)


def test_probe_verifier_scores_by_refutation_count():
    def probe(hypothesis):
        return [("r1", "doi:a", "refutes"), ("r2", "doi:b", "refutes"), ("s1", "doi:c", "supports")]

    from sage.debate.types import TranscriptEvent
    transcript = [TranscriptEvent(round=0, role=PROVER, event_type="initial",
                                  claims=("c0", "c1", "c2"))]
    out = ProbeVerifier().assess(HYP, VERIFIER, transcript, probe)
    assert out.score == 7.0  # 9 - 2*1
    assert out.specious_flags == (0, 1)
    assert out.claims == ("2 refuting references located",)
    assert len(out.citations) == 3


def test_probe_verifier_floors_at_one():
    def probe(hypothesis):
        return [(f"r{i}", "doi:x", "refutes") for i in range(12)]

    out = ProbeVerifier().assess(HYP, VERIFIER, [], probe)
    assert out.score == 1.0
    assert out.specious_flags == ()  # no prover claims on record yet


def test_config_rejects_degenerate_values():
    with pytest.raises(ValueError):
        DebateConfig(threshold=0.0)
    with pytest.raises(ValueError):
        DebateConfig(max_rounds=0)
    with pytest.raises(ValueError):
        DebateConfig(eta=0.0)
    with pytest.raises(ValueError):
        DebateConfig(delta=-1.0)


# ---------------------------------------------------------------- benchmark

def test_tier_ranges_cover_the_scale():
    assert TIER_RANGES == {
        "A": (8.5, 10.0), "B": (7.0, 8.5), "C": (5.0, 7.0),
        "D": (3.5, 5.0), "E": (1.0, 3.5),
    }
    assert set(TIER_CONTRADICTIONS) == set(TIER_RANGES)
    means = [TIER_CONTRADICTIONS[t][0] for t in "ABCDE"]
    assert means == sorted(means)


def test_dataset_is_deterministic_and_in_range():
    a = make_tier_dataset(per_tier=30, seed=7)
    b = make_tier_dataset(per_tier=30, seed=7)
    assert a == b
    assert len(a) == 150
    for proposal in a:
        lo, hi = TIER_RANGES[proposal.category]
        assert lo <= proposal.true_score <= hi
        assert (proposal.lo, proposal.hi) == (lo, hi)
    assert make_tier_dataset(per_tier=30, seed=8) != a


def test_benchmark_rejects_unknown_configuration():
    proposals = make_tier_dataset(per_tier=1, seed=0)
    with pytest.raises(ValueError, match="unknown configuration"):
        run_benchmark(proposals, "committee")
    with pytest.raises(ValueError, match="empty"):
        run_benchmark([], "full")


def test_configuration_quality_ordering_at_seed_zero():
    proposals = make_tier_dataset(per_tier=30, seed=0)
    results = {m: run_benchmark(proposals, m, seed=0)
               for m in ("single", "two_critic", "no_debate", "full")}
    accs = [results[m]["accuracy"] for m in ("single", "two_critic", "no_debate", "full")]
    gaps = [results[m]["gap"] for m in ("single", "two_critic", "no_debate", "full")]
    assert accs[0] < accs[1] < accs[2] < accs[3]
    assert gaps[0] < gaps[1] < gaps[2] < gaps[3]
    assert results["single"]["accuracy"] <= 0.40
    assert results["full"]["accuracy"] >= 0.75
    tiers = results["full"]["per_tier_mean"]
    assert tiers["A"] > tiers["B"] > tiers["C"] > tiers["D"] > tiers["E"]


def test_orderings_hold_across_several_seeds():
    proposals = make_tier_dataset(per_tier=30, seed=0)
    for seed in range(5):
        results = {m: run_benchmark(proposals, m, seed=seed)
                   for m in ("single", "two_critic", "no_debate", "full")}
        accs = [results[m]["accuracy"] for m in ("single", "two_critic", "no_debate", "full")]
        gaps = [results[m]["gap"] for m in ("single", "two_critic", "no_debate", "full")]
        assert accs == sorted(accs)
        assert gaps == sorted(gaps)
        assert results["full"]["gap"] > results["no_debate"]["gap"]


def test_full_mode_nests_no_debate_when_gate_stays_closed():
    proposals = make_tier_dataset(per_tier=10, seed=0)
    checked = 0
    for proposal in proposals:
        state = initial_assess(proposal, synthetic_critics(proposal, seed=7),
                               hypothesis_id=proposal.id)
        if should_debate(state.sigma):
            continue
        checked += 1
        verdict = deliberate(proposal, synthetic_critics(proposal, seed=7),
                             hypothesis_id=proposal.id)
        assert not verdict.debate_occurred
        assert verdict.final_score == pytest.approx(
            sum(state.scores.values()) / 3.0, abs=1e-12)
    assert checked > 0


def test_benchmark_runs_are_reproducible():
    proposals = make_tier_dataset(per_tier=5, seed=0)
    assert run_benchmark(proposals, "full", seed=3) == run_benchmark(proposals, "full", seed=3)


# ---------------------------------------------------------------------- cli

def test_cli_run_with_scripted_critics(tmp_path):
    critics_dir = tmp_path / "critics"
    critics_dir.mkdir()
    (critics_dir / "prover.json").write_text(json.dumps(
        [{"score": 9.0, "confidence": 0.9, "claims": ["c0"]}, {"score": 9.0, "confidence": 1.0}]))
    (critics_dir / "verifier.json").write_text(json.dumps(
        [{"score": 3.0, "confidence": 0.9}, {"score": 3.0, "confidence": 1.0, "specious_flags": [0]}]))
    (critics_dir / "judge.json").write_text(json.dumps(
        [{"score": 6.0, "confidence": 0.9}, {"score": 6.0, "confidence": 1.0, "specious_flags": [0]}]))
    hyp = tmp_path / "hyp.json"
    hyp.write_text(json.dumps(HYP))
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"max_rounds": 1}))

    runner = CliRunner()
    result = runner.invoke(debate_cli, [
        "run", "--hypothesis", str(hyp), "--critics", f"scripted:{critics_dir}",
        "--config", str(cfg)])
    assert result.exit_code == 0, result.output
    verdict = json.loads(result.output)
    assert verdict["final_score"] == pytest.approx(16.0 / 3.0)
    assert verdict["rounds_used"] == 1


def test_cli_bench_reports_summary(tmp_path):
    out = tmp_path / "bench.json"
    runner = CliRunner()
    result = runner.invoke(debate_cli, [
        "bench", "--mode", "full", "--seeds", "2", "--per-tier", "4", "--out", str(out)])
    assert result.exit_code == 0, result.output
    summary = json.loads(out.read_text())
    assert summary["mode"] == "full"
    assert len(summary["runs"]) == 2
    assert 0.0 <= summary["mean_accuracy"] <= 1.0
