"""Critic backends.

The protocol only needs `assess(hypothesis, role, transcript, probe)`.
Shipped implementations are deterministic: scripted replay for tests and a
probe-driven Verifier whose score drops per refuting citation. Remote
LLM-backed critics plug in through the same interface (wrap the client
callable with CallableCritic); none ship in-tree.
"""

from __future__ import annotations

from collections import deque
from typing import Callable, Iterable, Optional, Sequence

from sage.debate.types import Citation, CriticAssessment


class CriticBackend:
    """Interface. transcript is the event list so far; probe is an optional
    reference-search callable returning Citation-like (id, locator, stance)."""

    def assess(self, hypothesis, role: str, transcript: list,
               probe: Optional[Callable]) -> CriticAssessment:
        raise NotImplementedError


class ScriptedCritic(CriticBackend):
    """Replays a fixed assessment sequence; raises when the script runs dry."""

    def __init__(self, assessments: Iterable[CriticAssessment]):
        self._queue = deque(assessments)

    def assess(self, hypothesis, role, transcript, probe) -> CriticAssessment:
        if not self._queue:
            raise RuntimeError("scripted critic has no assessments left")
        return self._queue.popleft()


class CallableCritic(CriticBackend):
    """Adapts any function(hypothesis, role, transcript, probe) -> CriticAssessment."""

    def __init__(self, fn: Callable):
        self._fn = fn

    def assess(self, hypothesis, role, transcript, probe) -> CriticAssessment:
        return self._fn(hypothesis, role, transcript, probe)


class ProbeVerifier(CriticBackend):
    """Conservative critic: score = max(1, base - step per refuting citation).

    Flags one specious claim per refutation, up to the number of claims the
    Prover has put on the table this debate.
    """

    def __init__(self, base: float = 9.0, step: float = 1.0, confidence: float = 0.9):
        self.base = base
        self.step = step
        self.confidence = confidence

    def assess(self, hypothesis, role, transcript, probe) -> CriticAssessment:
        citations: list[Citation] = []
        if probe is not None:
            for ref in probe(hypothesis):
                if isinstance(ref, Citation):
                    citations.append(ref)
                else:
                    ref_id, locator, stance = ref
                    citations.append(Citation(id=ref_id, locator=locator, stance=stance))
        refuting = sum(1 for c in citations if c.stance == "refutes")
        score = max(1.0, self.base - refuting * self.step)
        prover_claims = max(
            (len(e.claims) for e in transcript if e.role == "Prover"), default=0
        )
        flags = tuple(range(min(refuting, prover_claims)))
        return CriticAssessment(
            role=role, score=score, confidence=self.confidence,
            claims=(f"{refuting} refuting references located",),
            citations=tuple(citations), specious_flags=flags,
        )


def scripted_set(prover: Sequence[CriticAssessment],
                 verifier: Sequence[CriticAssessment],
                 judge: Sequence[CriticAssessment]) -> dict[str, CriticBackend]:
    return {
        "Prover": ScriptedCritic(prover),
        "Verifier": ScriptedCritic(verifier),
        "Judge": ScriptedCritic(judge),
    }
