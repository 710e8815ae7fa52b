"""Tabular learners: Q-learning, Monte-Carlo, and multi-objective Q-learning.

Q-learning is the base implementation; Monte-Carlo inherits its action
selection, episode generation, and table plumbing, overriding only the
update hooks.  The multi-objective variant stores a length-M value vector
per (state, action) and picks actions by the scalarized value.

Tabular learners need an environment exposing a discrete state index and
run single-threaded.
"""

from __future__ import annotations

import numpy as np

from rlframe.errors import EpisodeNotTerminal
from rlframe.learn.base import Learner
from rlframe.learn.replay import ReplayBuffer
from rlframe.learn.returns import scalarize
from rlframe.learn.types import Transition
from rlframe.seeding import derive_seed


class QTable:
    """Sparse (state, action) -> value map; unseen pairs read as zero.

    width=None stores scalars; an integer width stores value vectors.
    """

    def __init__(self, num_actions: int, width: int | None = None):
        self.num_actions = num_actions
        self.width = width
        self._values: dict = {}

    def _zero(self):
        return 0.0 if self.width is None else np.zeros(self.width)

    def get(self, state, action):
        return self._values.get((state, action), self._zero())

    def set(self, state, action, value):
        self._values[(state, action)] = value

    def row(self, state):
        """All action values for a state (zeros where unseen)."""
        return [self.get(state, a) for a in range(self.num_actions)]

    def seen_states(self):
        return {s for s, _ in self._values}

    def __len__(self):
        return len(self._values)


def q_update(table: QTable, state, action, reward: float, next_state,
             terminal: bool, beta: float, gamma: float) -> float:
    """One temporal-difference backup; returns the new Q(s, a).

    Q(s,a) += beta * (r + gamma * max_a' Q(s',a') - Q(s,a)); the bootstrap
    term is dropped on terminal transitions.
    """
    current = table.get(state, action)
    bootstrap = 0.0 if terminal else max(table.row(next_state))
    updated = current + beta * (reward + gamma * bootstrap - current)
    table.set(state, action, updated)
    return updated


def mc_update(table: QTable, episode, gamma: float, visit_counts: dict) -> None:
    """First-visit Monte-Carlo: running mean of observed returns per (s, a).

    episode is a list of (state, action, reward, terminal) tuples for one
    complete episode; raises EpisodeNotTerminal otherwise.
    """
    if not episode:
        return
    if not episode[-1][3]:
        raise EpisodeNotTerminal("Monte-Carlo updates need a finished episode")

    returns = []
    acc = 0.0
    for _, _, reward, _ in reversed(episode):
        acc = reward + gamma * acc
        returns.append(acc)
    returns.reverse()

    first_visit_done = set()
    for (state, action, _, _), g in zip(episode, returns):
        key = (state, action)
        if key in first_visit_done:
            continue
        first_visit_done.add(key)
        count = visit_counts.get(key, 0) + 1
        visit_counts[key] = count
        current = table.get(state, action)
        table.set(state, action, current + (g - current) / count)


class QLearningLearner(Learner):
    """Epsilon-greedy tabular Q-learning with per-step TD backups."""

    multi_objective = False

    def __init__(self, spec, env, network=None):
        super().__init__(spec, env, network)
        num_actions = env.descriptor.action_space[0]
        width = env.get_number_of_objectives() if self.multi_objective else None
        self.table = QTable(num_actions, width)
        self.visit_counts: dict = {}
        self.replay = (
            ReplayBuffer(spec.replay_capacity, derive_seed(spec.seed, 900))
            if spec.replay_capacity > 0
            else None
        )

    # --- encoding -----------------------------------------------------------

    def observe(self, env):
        return env.discrete_state_index()

    # --- action choice ---------------------------------------------------------

    def action_values(self, state) -> np.ndarray:
        """Scalar ranking values for each action (overridden for MO)."""
        return np.asarray(self.table.row(state), dtype=np.float64)

    def select_action(self, state, mode: str) -> int:
        if mode == "train":
            epsilon = self.spec.epsilon_at(self.steps_seen)
            if self._rng.random() < epsilon:
                return int(self._rng.integers(self.table.num_actions))
        # np.argmax takes the first maximum: ties break to the lowest index
        return int(np.argmax(self.action_values(state)))

    def select_actions(self, obs, env, mode):
        return [self.select_action(obs, mode)]

    # --- updates ----------------------------------------------------------------

    def _td_backup(self, state, action, reward, next_state, terminal):
        q_update(
            self.table, state, action, reward, next_state, terminal,
            self.spec.learning_rate, self.spec.gamma,
        )

    def on_step(self, obs, actions, rewards, next_obs, terminal):
        reward = self.scalar_reward(rewards)
        self._td_backup(obs, actions[0], reward, next_obs, terminal)
        if self.replay is not None:
            self.replay.store(
                Transition([obs], list(actions), rewards, [next_obs], terminal)
            )
            if self.spec.batch_size > 0 and len(self.replay) >= self.spec.batch_size:
                for t in self.replay.sample(self.spec.batch_size):
                    self._td_backup(
                        t.states[0], t.actions[0], self.scalar_reward(t.rewards),
                        t.next_states[0], t.terminal,
                    )

    def greedy_policy(self):
        """state -> greedy action over the current table."""
        return lambda state: int(np.argmax(self.action_values(state)))


class MonteCarloLearner(QLearningLearner):
    """First-visit Monte-Carlo control; only the update hooks differ."""

    def __init__(self, spec, env, network=None):
        super().__init__(spec, env, network)
        self._episode: list = []

    def _reset_worker_state(self):
        self._episode = []

    def begin_episode(self, env, mode):
        self._episode = []

    def on_step(self, obs, actions, rewards, next_obs, terminal):
        self._episode.append((obs, actions[0], self.scalar_reward(rewards), terminal))

    def on_episode_end(self):
        mc_update(self.table, self._episode, self.spec.gamma, self.visit_counts)
        self._episode = []


class MOQLearningLearner(QLearningLearner):
    """Single-policy multi-objective Q-learning.

    Stores a value vector per (state, action); both action selection and the
    bootstrap action use the scalarized value under the fixed weight vector.
    """

    multi_objective = True

    def action_values(self, state):
        w = np.asarray(self.spec.weights, dtype=np.float64)
        return np.asarray(
            [scalarize(v, w) for v in self.table.row(state)], dtype=np.float64
        )

    def on_step(self, obs, actions, rewards, next_obs, terminal):
        current = self.table.get(obs, actions[0])
        if terminal:
            bootstrap = np.zeros_like(current)
        else:
            best = int(np.argmax(self.action_values(next_obs)))
            bootstrap = self.table.get(next_obs, best)
        target = rewards + self.spec.gamma * bootstrap
        self.table.set(
            obs, actions[0], current + self.spec.learning_rate * (target - current)
        )
