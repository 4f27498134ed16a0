"""Value types for the three-critic deliberation protocol."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

PROVER = "Prover"
VERIFIER = "Verifier"
JUDGE = "Judge"
ROLES = (PROVER, VERIFIER, JUDGE)

SCORE_MIN = 1.0
SCORE_MAX = 10.0


@dataclass(frozen=True)
class Citation:
    """A literature reference surfaced by a critic or probe."""

    id: str
    locator: str
    stance: str = "supports"  # supports | refutes


@dataclass(frozen=True)
class CriticAssessment:
    role: str
    score: float
    confidence: float
    claims: tuple[str, ...] = ()
    citations: tuple[Citation, ...] = ()
    specious_flags: tuple[int, ...] = ()

    def __post_init__(self):
        if self.role not in ROLES:
            raise ValueError(f"unknown critic role {self.role!r}")
        if not SCORE_MIN <= self.score <= SCORE_MAX:
            raise ValueError(f"score must be in [1,10], got {self.score}")
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence must be in [0,1], got {self.confidence}")


@dataclass(frozen=True)
class TranscriptEvent:
    """One transcript entry; the JSON event-log schema mirrors these fields."""

    round: int
    role: str
    event_type: str  # initial | proposal | counter | synthesis | penalty
    score: Optional[float] = None
    confidence: Optional[float] = None
    claims: tuple[str, ...] = ()
    citations: tuple[Citation, ...] = ()
    flags: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {
            "round": self.round,
            "role": self.role,
            "event_type": self.event_type,
            "score": self.score,
            "confidence": self.confidence,
            "claims": list(self.claims),
            "citations": [{"id": c.id, "locator": c.locator, "stance": c.stance} for c in self.citations],
            "flags": list(self.flags),
        }


@dataclass(frozen=True)
class DebateConfig:
    threshold: float = 1.0      # debate iff sigma strictly exceeds this
    convergence: float = 0.5    # stop once sigma falls below this
    max_rounds: int = 3
    eta: float = 0.5            # pull rate toward the confidence-weighted mean
    delta: float = 2.0          # penalty per upheld specious flag

    def __post_init__(self):
        if self.threshold <= 0:
            raise ValueError("threshold must be positive")
        if self.max_rounds < 1:
            raise ValueError("max_rounds must be >= 1")
        if not 0.0 < self.eta <= 1.0:
            raise ValueError("eta must be in (0,1]")
        if self.delta < 0:
            raise ValueError("delta must be nonnegative")


@dataclass
class DebateState:
    hypothesis_id: str
    scores: dict[str, float]
    sigma: float
    round: int = 0
    transcript: list[TranscriptEvent] = field(default_factory=list)
    terminated_reason: Optional[str] = None  # converged | max_rounds | no_debate_needed
    penalties: list[dict] = field(default_factory=list)

    @property
    def terminated(self) -> bool:
        return self.terminated_reason is not None


@dataclass(frozen=True)
class NoveltyVerdict:
    hypothesis_id: str
    final_score: float
    critic_scores: dict[str, float]
    debate_occurred: bool
    rounds_used: int
    penalties_applied: tuple[dict, ...]
    terminated_reason: str
    sigma_initial: float
    sigma_final: float
    transcript: tuple[TranscriptEvent, ...] = ()

    def to_dict(self) -> dict:
        return {
            "hypothesis_id": self.hypothesis_id,
            "final_score": self.final_score,
            "critic_scores": dict(self.critic_scores),
            "debate_occurred": self.debate_occurred,
            "rounds_used": self.rounds_used,
            "penalties_applied": [dict(p) for p in self.penalties_applied],
            "terminated_reason": self.terminated_reason,
            "sigma_initial": self.sigma_initial,
            "sigma_final": self.sigma_final,
            "transcript": [event.to_dict() for event in self.transcript],
        }
