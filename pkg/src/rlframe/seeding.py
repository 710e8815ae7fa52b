"""Deterministic seed derivation.

Every stochastic component takes an explicit 64-bit seed.  Derived streams
(env clones, learner threads) get seeds hashed from (parent seed, ordinal)
so runs are reproducible regardless of construction order.
"""

from __future__ import annotations

import numpy as np


def derive_seed(parent_seed: int, ordinal: int) -> int:
    """Hash (parent_seed, ordinal) into a fresh 64-bit seed."""
    ss = np.random.SeedSequence([int(parent_seed) & 0xFFFFFFFFFFFFFFFF, int(ordinal)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(int(seed) & 0xFFFFFFFFFFFFFFFF)
