"""Five-tier ground-truth benchmark for the deliberation protocol.

Proposals carry a hidden true novelty score drawn from their tier's range.
Synthetic critics perceive that score through role-specific distortion:
the Prover tracks it optimistically, the Verifier compresses everything
toward the middle of the scale (a conservative stance sees little
separation), and the Judge tracks it with less noise. Debate rounds let
proposals converge back toward the true score, and judged-specious claims
penalize the Prover on low tiers. Accuracy counts a final score inside the
tier's range (inclusive); the A-E gap is mean(final | A) - mean(final | E).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from sage.debate.backends import CriticBackend
from sage.debate.protocol import deliberate, initial_assess
from sage.debate.types import (
    JUDGE,
    PROVER,
    VERIFIER,
    Citation,
    CriticAssessment,
    DebateConfig,
)

TIER_RANGES: dict[str, tuple[float, float]] = {
    "A": (8.5, 10.0),
    "B": (7.0, 8.5),
    "C": (5.0, 7.0),
    "D": (3.5, 5.0),
    "E": (1.0, 3.5),
}

# Mean and spread of contradicting-literature counts per tier.
TIER_CONTRADICTIONS: dict[str, tuple[float, float]] = {
    "A": (0.3, 0.6),
    "B": (1.2, 1.1),
    "C": (3.8, 1.8),
    "D": (6.2, 2.3),
    "E": (8.7, 2.9),
}

CONFIGURATIONS = ("single", "two_critic", "no_debate", "full")

SCALE_MID = 5.5


@dataclass(frozen=True)
class TierProposal:
    id: str
    category: str
    true_score: float
    lo: float
    hi: float
    cutoff: Optional[str] = None  # literature cutoff date handed to probes
    statement: str = ""


def make_tier_dataset(per_tier: int = 30, seed: int = 0) -> list[TierProposal]:
    rng = random.Random(seed)
    proposals = []
    for category in sorted(TIER_RANGES):
        lo, hi = TIER_RANGES[category]
        for i in range(per_tier):
            proposals.append(TierProposal(
                id=f"{category}{i:03d}",
                category=category,
                true_score=rng.uniform(lo, hi),
                lo=lo,
                hi=hi,
                statement=f"synthetic tier-{category} proposal #{i}",
            ))
    return proposals


_ROLE_PARAMS = {
    # slope toward the true score, additive bias, initial noise
    PROVER: (1.0, 0.5, 0.45),
    VERIFIER: (0.16, -0.2, 0.45),
    JUDGE: (1.0, 0.0, 0.35),
}

_ROUND_SHRINK = 0.35
_ROUND_NOISE = 0.2


class SyntheticTierCritic(CriticBackend):
    """Stateful synthetic critic: call 0 is the initial read, call r is round r."""

    def __init__(self, role: str, proposal: TierProposal, noise_seed, contradictions: float):
        self.role = role
        self.proposal = proposal
        self.rng = random.Random(noise_seed)
        self.contradictions = contradictions
        self.calls = 0
        self.initial_score: Optional[float] = None

    def _clamp(self, value: float) -> float:
        return min(10.0, max(1.0, value))

    def assess(self, hypothesis, role, transcript, probe) -> CriticAssessment:
        t = self.proposal.true_score
        call = self.calls
        self.calls += 1
        if call == 0:
            slope, bias, noise = _ROLE_PARAMS[self.role]
            score = self._clamp(SCALE_MID + slope * (t - SCALE_MID) + bias + self.rng.gauss(0.0, noise))
            self.initial_score = score
            claims = ("claim-0", "claim-1", "claim-2") if self.role == PROVER else ()
            return CriticAssessment(role=self.role, score=score, confidence=0.85, claims=claims)

        shrink = _ROUND_SHRINK ** call
        score = self._clamp(t + (self.initial_score - t) * shrink + self.rng.gauss(0.0, _ROUND_NOISE * shrink))
        confidence = min(0.95, 0.55 + 0.15 * call)
        citations: tuple[Citation, ...] = ()
        flags: tuple[int, ...] = ()
        if call == 1 and self.role == VERIFIER:
            refuting = int(round(self.contradictions))
            citations = tuple(
                Citation(id=f"{self.proposal.id}-ref{i}", locator="probe://literature", stance="refutes")
                for i in range(refuting)
            )
            flags = tuple(range(min(3, max(0, int(round(self.contradictions / 3.0))))))
        if call == 1 and self.role == JUDGE:
            flaggable = min(3, max(0, int(round(self.contradictions / 3.0))))
            upheld = min(flaggable, max(0, int(round(self.contradictions - 7.0))))
            flags = tuple(range(upheld))
        return CriticAssessment(role=self.role, score=score, confidence=confidence,
                                citations=citations, specious_flags=flags)


def synthetic_critics(proposal: TierProposal, seed: int) -> dict[str, CriticBackend]:
    """One fresh, deterministic critic set for a proposal.

    The contradiction count is a shared draw so the Verifier's citations and
    the Judge's upheld flags describe the same evidence.
    """
    mean, sd = TIER_CONTRADICTIONS[proposal.category]
    shared = random.Random(f"{seed}:{proposal.id}:shared")
    contradictions = max(0.0, shared.gauss(mean, sd))
    return {
        role: SyntheticTierCritic(role, proposal, f"{seed}:{proposal.id}:{role}", contradictions)
        for role in (PROVER, VERIFIER, JUDGE)
    }


CriticFactory = Callable[[TierProposal, int], dict[str, CriticBackend]]


def run_benchmark(
    proposals: Sequence[TierProposal],
    configuration: str,
    seed: int = 0,
    config: DebateConfig = DebateConfig(),
    critic_factory: CriticFactory = synthetic_critics,
) -> dict:
    """Score every proposal under one configuration and report accuracy,
    A-E gap, and per-tier means."""
    if configuration not in CONFIGURATIONS:
        raise ValueError(f"unknown configuration {configuration!r}, expected one of {CONFIGURATIONS}")
    if not proposals:
        raise ValueError("empty proposal set")

    finals = []
    for proposal in proposals:
        critics = critic_factory(proposal, seed)
        if configuration == "single":
            final = critics[VERIFIER].assess(proposal, VERIFIER, [], None).score
        elif configuration == "two_critic":
            prover = critics[PROVER].assess(proposal, PROVER, [], None).score
            verifier = critics[VERIFIER].assess(proposal, VERIFIER, [], None).score
            final = (prover + verifier) / 2.0
        elif configuration == "no_debate":
            state = initial_assess(proposal, critics, hypothesis_id=proposal.id)
            final = sum(state.scores.values()) / len(state.scores)
        else:
            final = deliberate(proposal, critics, config, hypothesis_id=proposal.id).final_score
        finals.append({
            "id": proposal.id,
            "category": proposal.category,
            "final": final,
            "in_range": proposal.lo <= final <= proposal.hi,
        })

    by_tier: dict[str, list[float]] = {}
    for item in finals:
        by_tier.setdefault(item["category"], []).append(item["final"])
    per_tier_mean = {tier: sum(vals) / len(vals) for tier, vals in sorted(by_tier.items())}
    accuracy = sum(1 for item in finals if item["in_range"]) / len(finals)
    gap = None
    if "A" in per_tier_mean and "E" in per_tier_mean:
        gap = per_tier_mean["A"] - per_tier_mean["E"]
    return {
        "configuration": configuration,
        "seed": seed,
        "n": len(finals),
        "accuracy": accuracy,
        "gap": gap,
        "per_tier_mean": per_tier_mean,
        "finals": finals,
    }
