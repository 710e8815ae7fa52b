"""4x4 deterministic grid.

Rules
-----
- Cells are (x, y) with x the column and y the row; (0, 0) is the start,
  (3, 3) the goal.
- Actions: 0=UP (y-1), 1=DOWN (y+1), 2=LEFT (x-1), 3=RIGHT (x+1).  Moving
  off-grid leaves the position unchanged.
- Reward 0.0 per step, +1.0 on entering the goal.  The episode ends at the
  goal or after 100 steps.
- Observation is a one-hot vector of length 16 over cell index y*4 + x.

Small enough that value iteration over the 16-state MDP is an exact oracle.
"""

from __future__ import annotations

import numpy as np

from rlframe.envs.base import EnvDescriptor, Environment

SIZE = 4
UP, DOWN, LEFT, RIGHT = 0, 1, 2, 3
START = (0, 0)
GOAL = (3, 3)

_MOVES = {UP: (0, -1), DOWN: (0, 1), LEFT: (-1, 0), RIGHT: (1, 0)}


class GridWorld(Environment):
    def __init__(self, seed: int = 0, max_steps: int = 100):
        descriptor = EnvDescriptor(
            num_agents=1,
            num_objectives=1,
            action_space=(4,),
            state_dim=SIZE * SIZE,
            fully_observable=True,
            deterministic=True,
        )
        super().__init__(descriptor, seed, max_steps)
        self._pos = START
        self.reset()

    def _do_reset(self):
        self._pos = START

    def _do_step(self, actions):
        dx, dy = _MOVES[actions[0]]
        x, y = self._pos[0] + dx, self._pos[1] + dy
        if 0 <= x < SIZE and 0 <= y < SIZE:
            self._pos = (x, y)
        if self._pos == GOAL:
            self._terminal = True
            return [1.0]
        return [0.0]

    def _observe(self):
        onehot = np.zeros(SIZE * SIZE, dtype=np.float64)
        onehot[self.discrete_state_index()] = 1.0
        return [onehot]

    def discrete_state_count(self):
        return SIZE * SIZE

    def discrete_state_index(self):
        x, y = self._pos
        return y * SIZE + x

    @property
    def position(self) -> tuple[int, int]:
        return self._pos
