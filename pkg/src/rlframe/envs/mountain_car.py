"""Mountain car with three reward objectives.

Dynamics (per step, thrust a in {-1, 0, +1} from action index - 1):

    v' = clamp(v + 0.001*a - 0.0025*cos(3x), [-0.07, 0.07])
    x' = clamp(x + v', [-1.2, 0.6])

The episode ends when x >= 0.5 (goal) or after 5000 steps.  Objectives:

    time:         -1 every step
    reversals:    -1 when the thrust flips sign versus the previous step
    acceleration: -1 whenever thrust is nonzero

Reset draws position uniformly from [-0.6, -0.4] with zero velocity.

For tabular learners the (position, velocity) box is discretized on a
uniform 40x40 grid; discrete_state_index() returns pos_bin * 40 + vel_bin.
"""

from __future__ import annotations

import math

import numpy as np

from rlframe.envs.base import EnvDescriptor, Environment

X_MIN, X_MAX = -1.2, 0.6
V_MIN, V_MAX = -0.07, 0.07
GOAL_X = 0.5
GRID = 40


class MountainCarMO(Environment):
    def __init__(self, seed: int = 0, max_steps: int = 5000):
        descriptor = EnvDescriptor(
            num_agents=1,
            num_objectives=3,
            action_space=(3,),
            state_dim=2,
            fully_observable=True,
            deterministic=False,
        )
        super().__init__(descriptor, seed, max_steps)
        self._x = 0.0
        self._v = 0.0
        self._prev_thrust = 0
        self.reset()

    def _do_reset(self):
        self._x = self._rng.uniform(-0.6, -0.4)
        self._v = 0.0
        self._prev_thrust = 0

    def _do_step(self, actions):
        thrust = actions[0] - 1
        v = self._v + 0.001 * thrust - 0.0025 * math.cos(3.0 * self._x)
        v = min(max(v, V_MIN), V_MAX)
        x = min(max(self._x + v, X_MIN), X_MAX)

        reversal = -1.0 if thrust * self._prev_thrust < 0 else 0.0
        accel = -1.0 if thrust != 0 else 0.0
        self._x, self._v = x, v
        self._prev_thrust = thrust

        if x >= GOAL_X:
            self._terminal = True
        return [-1.0, reversal, accel]

    def _observe(self):
        return [np.array([self._x, self._v])]

    def discrete_state_count(self):
        return GRID * GRID

    def discrete_state_index(self):
        pos_bin = min(GRID - 1, int((self._x - X_MIN) / (X_MAX - X_MIN) * GRID))
        vel_bin = min(GRID - 1, int((self._v - V_MIN) / (V_MAX - V_MIN) * GRID))
        return pos_bin * GRID + vel_bin
