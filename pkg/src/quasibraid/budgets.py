"""Search budgets shared by the quasipositivity and move-graph searches."""

from __future__ import annotations

import dataclasses


@dataclasses.dataclass(frozen=True)
class SearchBudget:
    """Resource caps for bounded searches.

    Exhausting a budget is always reported as an inconclusive outcome,
    never as a negative result.
    """

    max_nodes: int = 200_000
    max_strands: int = 8
    max_word_length: int = 64
    max_conjugator_length: int = 2

    def __post_init__(self):
        if self.max_nodes < 1 or self.max_strands < 1 or self.max_word_length < 1:
            raise ValueError("budget caps must be positive")
        if self.max_conjugator_length < 0:
            raise ValueError("conjugator length cap must be >= 0")


DEFAULT_BUDGET = SearchBudget()
