"""Deterministic seed derivation.

Every randomized stage (extraction, per-tree bagging, restarts, synthetic
corpora) draws from a child seed derived from one master seed and a label,
so reruns with the same master seed reproduce byte-identical artifacts and
no two stages share an RNG stream.
"""

from __future__ import annotations

import hashlib


def derive_seed(master: int, label: str) -> int:
    digest = hashlib.sha256(f"{master}:{label}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")
