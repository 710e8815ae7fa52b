"""Human slots: per-agent mailboxes for live action commands.

A slot holds at most one pending command (last writer wins within a tick
window).  resolve() returns the most recent command that arrived before
the tick being executed and consumes it, so one keypress fires once; with
no pending command the slot's default action is used.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field


@dataclass
class HumanSlot:
    agent_index: int
    default_action: int
    _pending: tuple[int, int] | None = None  # (action, arrival_tick)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def submit(self, action: int, arrival_tick: int) -> None:
        with self._lock:
            self._pending = (int(action), int(arrival_tick))

    def clear(self) -> None:
        with self._lock:
            self._pending = None

    def resolve(self, tick: int) -> tuple[int, int | None]:
        """Action to apply at `tick`, plus the consumed command's arrival
        tick (None when falling back to the default)."""
        with self._lock:
            if self._pending is not None and self._pending[1] < tick:
                action, arrival = self._pending
                self._pending = None
                return action, arrival
            return self.default_action, None
