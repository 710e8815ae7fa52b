"""Learner base: the episode engine and its named override points.

Subclasses customize behavior through three hooks, which is how new
learners inherit existing ones without touching the engine:

    on_step(obs, actions, rewards, next_obs, terminal)  every step
    on_train_interval()                                 every L steps
    on_episode_end()                                    at terminal states

The engine itself handles action selection plumbing, reward clipping,
step accounting, and budget tickets.
"""

from __future__ import annotations

import copy
import threading

import numpy as np

from rlframe.learn.types import LearnerSpec
from rlframe.seeding import derive_seed, make_rng


class EpisodeResult:
    __slots__ = ("steps", "returns", "losses", "complete")

    def __init__(self, steps, returns, losses, complete):
        self.steps = steps
        self.returns = returns
        self.losses = losses
        self.complete = complete


class Tickets:
    """Shared step budget; thread-safe take()."""

    def __init__(self, budget: int):
        self._budget = budget
        self._taken = 0
        self._lock = threading.Lock()

    def take(self) -> bool:
        with self._lock:
            if self._taken >= self._budget:
                return False
            self._taken += 1
            return True

    @property
    def taken(self) -> int:
        with self._lock:
            return self._taken


class Learner:
    requires_network = False

    def __init__(self, spec: LearnerSpec, env, network=None):
        self.spec = spec
        self.env = env
        self.network = network
        self.training_interval = 1
        self.steps_seen = 0
        self._rng = make_rng(derive_seed(spec.seed, 0))

    # --- thread support ---------------------------------------------------

    def clone_for_thread(self, thread_id: int) -> "Learner":
        """Shallow worker copy with its own random stream and buffers."""
        worker = copy.copy(self)
        worker._rng = make_rng(derive_seed(self.spec.seed, thread_id))
        worker.steps_seen = 0
        worker._reset_worker_state()
        return worker

    def _reset_worker_state(self):
        pass

    # --- per-learner behavior ----------------------------------------------

    def observe(self, env):
        """Encode the env's current observation for this learner type."""
        raise NotImplementedError

    def select_actions(self, obs, env, mode: str) -> list[int]:
        raise NotImplementedError

    def on_step(self, obs, actions, rewards, next_obs, terminal):
        pass

    def on_train_interval(self):
        return None

    def on_episode_end(self):
        pass

    def begin_episode(self, env, mode):
        pass

    # --- engine ----------------------------------------------------------------

    def clip_rewards(self, rewards: np.ndarray) -> np.ndarray:
        c = self.spec.reward_clip
        if c is None:
            return rewards
        return np.clip(rewards, -c, c)

    def scalar_reward(self, rewards: np.ndarray) -> float:
        w = self.spec.weights
        if w is None:
            return float(rewards.sum())  # implicit all-ones weights
        return float(np.dot(rewards, np.asarray(w, dtype=np.float64)))

    def run_episode(self, env, mode: str, tickets: Tickets | None = None) -> EpisodeResult:
        env.reset()
        objectives = env.get_number_of_objectives()
        returns = np.zeros(objectives)
        losses: list[float] = []
        steps = 0
        self.begin_episode(env, mode)

        while not env.is_terminal():
            if tickets is not None and not tickets.take():
                return EpisodeResult(steps, returns, losses, complete=False)
            obs = self.observe(env)
            actions = self.select_actions(obs, env, mode)
            rewards = env.step(actions)
            returns += rewards
            steps += 1
            if mode == "train":
                self.steps_seen += 1
                clipped = self.clip_rewards(rewards)
                self.on_step(obs, actions, clipped, self.observe(env), env.is_terminal())
                if steps % self.training_interval == 0:
                    loss = self.on_train_interval()
                    if loss is not None:
                        losses.append(loss)

        if mode == "train":
            self.on_episode_end()
        return EpisodeResult(steps, returns, losses, complete=True)
