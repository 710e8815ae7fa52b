"""Experience replay: a FIFO ring sampled uniformly with replacement."""

from __future__ import annotations

from rlframe.errors import NotEnoughSamples
from rlframe.seeding import make_rng


class ReplayBuffer:
    def __init__(self, capacity: int, seed: int = 0):
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        self.capacity = int(capacity)
        self._ring = []
        self._next = 0
        self._rng = make_rng(seed)

    def __len__(self):
        return len(self._ring)

    def store(self, transition) -> None:
        """Append; once full, the oldest entry is overwritten first."""
        if len(self._ring) < self.capacity:
            self._ring.append(transition)
        else:
            self._ring[self._next] = transition
        self._next = (self._next + 1) % self.capacity

    def sample(self, k: int):
        """Draw k transitions uniformly with replacement."""
        if len(self._ring) < k:
            raise NotEnoughSamples(f"buffer holds {len(self._ring)}, need {k}")
        indices = self._rng.integers(len(self._ring), size=k)
        return [self._ring[i] for i in indices]

    def contents(self):
        """Current transitions, oldest first."""
        if len(self._ring) < self.capacity:
            return list(self._ring)
        return self._ring[self._next:] + self._ring[: self._next]
