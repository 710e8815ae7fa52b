"""Cart-pole balancing with the classical closed-form dynamics.

Constants: gravity 9.8, cart mass 1.0, pole mass 0.1, pole half-length 0.5,
force magnitude 10, Euler integration with dt = 0.02.  The episode fails
when |pole angle| > 12 degrees or |cart position| > 2.4, and is truncated
at 500 steps.  Reward is +1 per step.  Actions: 0 pushes left, 1 right.

The initial state is drawn uniformly from [-0.05, 0.05]^4.
"""

from __future__ import annotations

import math

import numpy as np

from rlframe.envs.base import EnvDescriptor, Environment

GRAVITY = 9.8
CART_MASS = 1.0
POLE_MASS = 0.1
TOTAL_MASS = CART_MASS + POLE_MASS
HALF_LENGTH = 0.5
POLE_MASS_LENGTH = POLE_MASS * HALF_LENGTH
FORCE_MAG = 10.0
DT = 0.02
ANGLE_LIMIT = 12.0 * math.pi / 180.0
X_LIMIT = 2.4
INIT_BOUND = 0.05


class CartPole(Environment):
    def __init__(self, seed: int = 0, max_steps: int = 500):
        descriptor = EnvDescriptor(
            num_agents=1,
            num_objectives=1,
            action_space=(2,),
            state_dim=4,
            fully_observable=True,
            deterministic=False,
        )
        super().__init__(descriptor, seed, max_steps)
        self._state = np.zeros(4)
        self.reset()

    def _do_reset(self):
        self._state = self._rng.uniform(-INIT_BOUND, INIT_BOUND, size=4)

    def _do_step(self, actions):
        x, x_dot, theta, theta_dot = self._state
        force = FORCE_MAG if actions[0] == 1 else -FORCE_MAG

        cos_t = math.cos(theta)
        sin_t = math.sin(theta)
        temp = (force + POLE_MASS_LENGTH * theta_dot**2 * sin_t) / TOTAL_MASS
        theta_acc = (GRAVITY * sin_t - cos_t * temp) / (
            HALF_LENGTH * (4.0 / 3.0 - POLE_MASS * cos_t**2 / TOTAL_MASS)
        )
        x_acc = temp - POLE_MASS_LENGTH * theta_acc * cos_t / TOTAL_MASS

        x += DT * x_dot
        x_dot += DT * x_acc
        theta += DT * theta_dot
        theta_dot += DT * theta_acc
        self._state = np.array([x, x_dot, theta, theta_dot])

        if abs(x) > X_LIMIT or abs(theta) > ANGLE_LIMIT:
            self._terminal = True
        return [1.0]

    def _observe(self):
        return [self._state.copy()]
