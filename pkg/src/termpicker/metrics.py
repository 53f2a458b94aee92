"""Ranked-list quality measures: average precision and reciprocal rank@k.

Relevance is binary. Relevant items missing from the ranked list contribute
zero while still counting in the average-precision denominator, penalizing
candidate-set gaps instead of hiding them.
"""

from __future__ import annotations

from typing import Collection, Sequence


def average_precision(ranked: Sequence[str], relevant: Collection[str]) -> float:
    """Mean of precision at each relevant item's rank, over all relevant items."""
    relevant_set = set(relevant)
    if not relevant_set:
        raise ValueError("relevant set must not be empty")
    hits = 0
    total = 0.0
    for rank, item in enumerate(ranked, start=1):
        if item in relevant_set:
            relevant_set.discard(item)
            hits += 1
            total += hits / rank
    return total / len(set(relevant))


def reciprocal_rank_at_k(ranked: Sequence[str], relevant: Collection[str], k: int = 5) -> float:
    """1/rank of the first relevant item if it appears within the top k, else 0."""
    relevant_set = set(relevant)
    if not relevant_set:
        raise ValueError("relevant set must not be empty")
    for rank, item in enumerate(ranked[:k], start=1):
        if item in relevant_set:
            return 1.0 / rank
    return 0.0
