"""The deliberation protocol.

Round shape: Prover proposal, Verifier counter (may flag specious claims),
Judge synthesis (may uphold flags). All three proposals then pull every
critic's score toward their confidence-weighted mean at rate eta; upheld
flags subtract delta from the Prover, clamped to [1,10]. A debate runs only
when the initial population sigma strictly exceeds the threshold, and stops
once sigma falls below the convergence bound or max_rounds is reached. The
verdict is the unweighted mean of the three final scores.
"""

from __future__ import annotations

import math
from typing import Callable, Mapping, Optional

from sage.debate.backends import CriticBackend
from sage.debate.types import (
    JUDGE,
    PROVER,
    ROLES,
    SCORE_MAX,
    SCORE_MIN,
    VERIFIER,
    CriticAssessment,
    DebateConfig,
    DebateState,
    NoveltyVerdict,
    TranscriptEvent,
)

Probe = Optional[Callable[..., list]]


class DebateBackendError(Exception):
    """A critic backend failed; carries the failing role."""

    def __init__(self, role: str, cause: Exception):
        super().__init__(f"critic backend for role {role} failed: {cause}")
        self.role = role
        self.cause = cause


def population_sigma(scores) -> float:
    """Population standard deviation over the critic scores (divisor n)."""
    values = list(scores)
    mean = sum(values) / len(values)
    return math.sqrt(sum((v - mean) ** 2 for v in values) / len(values))


def should_debate(sigma: float, threshold: float = 1.0) -> bool:
    """Strict inequality: sigma exactly at the threshold does not debate."""
    return sigma > threshold


def _call_backend(critics: Mapping[str, CriticBackend], role: str, hypothesis,
                  state: DebateState, probe: Probe) -> CriticAssessment:
    try:
        assessment = critics[role].assess(hypothesis, role, list(state.transcript), probe)
    except Exception as exc:
        raise DebateBackendError(role, exc) from exc
    if assessment.role != role:
        raise DebateBackendError(role, ValueError(f"backend answered as {assessment.role}"))
    return assessment


def initial_assess(hypothesis, critics: Mapping[str, CriticBackend],
                   probe: Probe = None, hypothesis_id: str = "") -> DebateState:
    """Collect one assessment per role and compute the starting sigma."""
    state = DebateState(hypothesis_id=hypothesis_id or getattr(hypothesis, "id", ""),
                        scores={}, sigma=0.0)
    for role in ROLES:
        assessment = _call_backend(critics, role, hypothesis, state, probe)
        state.scores[role] = assessment.score
        state.transcript.append(TranscriptEvent(
            round=0, role=role, event_type="initial",
            score=assessment.score, confidence=assessment.confidence,
            claims=assessment.claims, citations=assessment.citations,
            flags=assessment.specious_flags,
        ))
    state.sigma = population_sigma(state.scores.values())
    return state


def _clamp(score: float) -> float:
    return min(SCORE_MAX, max(SCORE_MIN, score))


def run_round(state: DebateState, critics: Mapping[str, CriticBackend],
              hypothesis, config: DebateConfig = DebateConfig(),
              probe: Probe = None) -> DebateState:
    """Execute one proposal/counter/synthesis round and update scores.

    On a backend failure the state keeps every event of the completed steps
    and no score changes; the error surfaces with the failing role.
    """
    if state.terminated:
        raise ValueError(f"debate already terminated ({state.terminated_reason})")
    round_no = state.round + 1

    proposals: dict[str, CriticAssessment] = {}
    step_types = {PROVER: "proposal", VERIFIER: "counter", JUDGE: "synthesis"}
    for role in (PROVER, VERIFIER, JUDGE):
        assessment = _call_backend(critics, role, hypothesis, state, probe)
        proposals[role] = assessment
        state.transcript.append(TranscriptEvent(
            round=round_no, role=role, event_type=step_types[role],
            score=assessment.score, confidence=assessment.confidence,
            claims=assessment.claims, citations=assessment.citations,
            flags=assessment.specious_flags,
        ))

    confidence_total = sum(p.confidence for p in proposals.values())
    if confidence_total <= 0:
        weighted_mean = sum(p.score for p in proposals.values()) / len(proposals)
    else:
        weighted_mean = sum(p.confidence * p.score for p in proposals.values()) / confidence_total

    for role in ROLES:
        state.scores[role] = _clamp(
            state.scores[role] + config.eta * (weighted_mean - state.scores[role])
        )

    # Judge-upheld flags penalize the Prover once per flag.
    verifier_flags = set(proposals[VERIFIER].specious_flags)
    upheld = [f for f in proposals[JUDGE].specious_flags if f in verifier_flags]
    for flag in upheld:
        state.scores[PROVER] = _clamp(state.scores[PROVER] - config.delta)
        record = {"round": round_no, "flag": flag, "delta": config.delta,
                  "prover_score": state.scores[PROVER]}
        state.penalties.append(record)
        state.transcript.append(TranscriptEvent(
            round=round_no, role=PROVER, event_type="penalty",
            score=state.scores[PROVER], flags=(flag,),
        ))

    state.round = round_no
    state.sigma = population_sigma(state.scores.values())
    if state.sigma < config.convergence:
        state.terminated_reason = "converged"
    elif state.round >= config.max_rounds:
        state.terminated_reason = "max_rounds"
    return state


def deliberate(hypothesis, critics: Mapping[str, CriticBackend],
               config: DebateConfig = DebateConfig(),
               probe: Probe = None, hypothesis_id: str = "") -> NoveltyVerdict:
    """Initial assessment, optional multi-round debate, unweighted-mean verdict."""
    state = initial_assess(hypothesis, critics, probe, hypothesis_id)
    sigma_initial = state.sigma
    debated = should_debate(state.sigma, config.threshold)
    if not debated:
        state.terminated_reason = "no_debate_needed"
    else:
        while not state.terminated:
            run_round(state, critics, hypothesis, config, probe)

    final = sum(state.scores[role] for role in ROLES) / len(ROLES)
    return NoveltyVerdict(
        hypothesis_id=state.hypothesis_id,
        final_score=final,
        critic_scores=dict(state.scores),
        debate_occurred=debated,
        rounds_used=state.round,
        penalties_applied=tuple(state.penalties),
        terminated_reason=state.terminated_reason or "",
        sigma_initial=sigma_initial,
        sigma_final=state.sigma,
        transcript=tuple(state.transcript),
    )
