"""Novelty-refinement loop: deliberate, revise, repeat within a budget."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from sage.pipeline.types import Hypothesis

# deliberate(hypothesis, iteration) -> object with a float final_score
Deliberate = Callable[[Hypothesis, int], object]
# revise(hypothesis, verdict, iteration) -> Hypothesis
Revise = Callable[[Hypothesis, object, int], Hypothesis]


class RefineError(RuntimeError):
    """Revision failed; carries the iteration index it failed at."""

    def __init__(self, iteration: int, message: str):
        super().__init__(f"revision failed at iteration {iteration}: {message}")
        self.iteration = iteration


@dataclass
class RefineOutcome:
    hypothesis: Hypothesis
    verdict: object
    iterations: int
    below_threshold: bool
    score_history: tuple


def refine_until_novel(
    hypothesis: Hypothesis,
    deliberate: Deliberate,
    threshold: float = 7.0,
    max_iters: int = 3,
    revise: Optional[Revise] = None,
) -> RefineOutcome:
    """Re-deliberate until the novelty verdict clears ``threshold``.

    Each iteration deliberates on the current hypothesis; a score below the
    threshold triggers one revision (when a reviser is bound and budget
    remains). Returns the first passing hypothesis, or the last attempt
    with ``below_threshold`` set once ``max_iters`` is exhausted.
    """
    if not (1.0 <= threshold <= 10.0):
        raise ValueError("novelty threshold must lie in [1, 10]")
    if max_iters < 1:
        raise ValueError("max_iters must be at least 1")

    history = []
    verdict = None
    for iteration in range(max_iters):
        verdict = deliberate(hypothesis, iteration)
        score = float(verdict.final_score)
        history.append(score)
        if score >= threshold:
            return RefineOutcome(
                hypothesis=hypothesis,
                verdict=verdict,
                iterations=iteration + 1,
                below_threshold=False,
                score_history=tuple(history),
            )
        if revise is not None and iteration + 1 < max_iters:
            try:
                hypothesis = revise(hypothesis, verdict, iteration + 1)
            except Exception as exc:  # surfaced with the iteration index
                raise RefineError(iteration + 1, str(exc)) from exc
    return RefineOutcome(
        hypothesis=hypothesis,
        verdict=verdict,
        iterations=max_iters,
        below_threshold=True,
        score_history=tuple(history),
    )
