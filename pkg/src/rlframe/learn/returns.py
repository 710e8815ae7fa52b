"""Return computations: discounted sums, n-step targets, scalarization."""

from __future__ import annotations

import numpy as np

from rlframe.errors import WeightDimMismatch


def discounted_return(rewards, gamma: float) -> float:
    """Sum of gamma^k * rewards[k] over the given reward sequence."""
    total = 0.0
    discount = 1.0
    for r in rewards:
        total += discount * float(r)
        discount *= gamma
    return total


def nstep_return(rewards, bootstrap_value: float, gamma: float, n: int,
                 terminal: bool = False) -> float:
    """Discounted sum of up to n rewards plus a discounted bootstrap.

    The bootstrap is dropped when the segment ended on a terminal step.
    """
    rewards = list(rewards)
    assert len(rewards) <= n, "segment longer than n"
    total = discounted_return(rewards, gamma)
    if not terminal:
        total += gamma ** len(rewards) * float(bootstrap_value)
    return total


def scalarize(rewards, weights) -> float:
    """Linear weighted sum collapsing an M-objective reward to a scalar."""
    r = np.asarray(rewards, dtype=np.float64)
    w = np.asarray(weights, dtype=np.float64)
    if r.shape != w.shape:
        raise WeightDimMismatch(
            f"weights shape {w.shape} does not match rewards shape {r.shape}"
        )
    return float(np.dot(r, w))
