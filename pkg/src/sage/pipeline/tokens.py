"""Token accounting for context bundles and stage outputs.

Counts are instrumentation, not billing: the default counter approximates
one token per four characters, rounded up, and any callable can be swapped
in when a backend exposes its real tokenizer.
"""

from __future__ import annotations

from typing import Callable, Optional

TokenCounter = Callable[[str], int]


def default_counter(text: str) -> int:
    """One token per four characters, rounded up."""
    return (len(text) + 3) // 4


def token_count(text: str, counter: Optional[TokenCounter] = None) -> int:
    """Count tokens in ``text`` with ``counter`` (default: ceil(len/4)).

    Deterministic for a fixed counter, and additive over concatenation to
    within one unit per boundary.
    """
    counted = (counter or default_counter)(text)
    if not isinstance(counted, int) or counted < 0:
        raise ValueError("token counter must return a nonnegative integer")
    return counted
