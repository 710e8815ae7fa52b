"""Advantage actor-critic over a shared policy network.

Each learner thread owns a cloned environment and accumulates an L-step
segment; at every training interval it turns the segment into n-step
returns (bootstrapping from the critic unless the segment ended terminal)
and applies one update under the network's writer lock.  Segments left
over when an episode ends mid-interval are dropped, so a T-step episode
performs exactly floor(T / L) updates.

With several agents, every non-external agent contributes its own
(state, action, return) rows to the batch; agents share the one policy.
Multi-objective rewards are scalarized with the spec's weight vector
before returns are computed.

In train mode actions are sampled from the policy; in eval mode the
argmax action is taken (ties to the lowest index).
"""

from __future__ import annotations

import numpy as np

from rlframe.learn.base import Learner


class A3CLearner(Learner):
    requires_network = True

    def __init__(self, spec, env, network=None):
        super().__init__(spec, env, network)
        self._segment: list = []
        self._external: frozenset[int] = env.external_agent_indices()

    def _reset_worker_state(self):
        self._segment = []

    def begin_episode(self, env, mode):
        self._segment = []
        self._external = env.external_agent_indices()

    # --- acting --------------------------------------------------------------

    def observe(self, env):
        return env.get_state()

    def _policy_rows(self, states):
        probs, _ = self.network.predict(np.asarray(states, dtype=np.float64))
        return probs

    def _sample(self, probs_row) -> int:
        cdf = np.cumsum(probs_row)
        idx = int(np.searchsorted(cdf, self._rng.random(), side="right"))
        return min(idx, len(probs_row) - 1)

    def select_action(self, state, mode: str) -> int:
        probs = self._policy_rows([state])[0]
        if mode == "train":
            return self._sample(probs)
        return int(np.argmax(probs))

    def select_actions(self, obs, env, mode):
        external = env.external_agent_indices()
        actions = [0] * len(obs)
        internal = [i for i in range(len(obs)) if i not in external]
        if internal:
            probs = self._policy_rows([obs[i] for i in internal])
            for row, i in enumerate(internal):
                if mode == "train":
                    actions[i] = self._sample(probs[row])
                else:
                    actions[i] = int(np.argmax(probs[row]))
        return actions

    # --- learning ----------------------------------------------------------------

    def on_step(self, obs, actions, rewards, next_obs, terminal):
        self._segment.append(
            (obs, list(actions), self.scalar_reward(rewards), next_obs, terminal)
        )

    def on_train_interval(self):
        if not self._segment:
            return None
        states, actions, returns = self._segment_batch()
        self._segment = []
        if len(states) == 0:
            return None
        return self.network.train_network(
            {"states": np.asarray(states), "actions": np.asarray(actions),
             "returns": np.asarray(returns)}
        )

    def on_episode_end(self):
        # partial segments are dropped: updates happen only on full intervals
        self._segment = []

    def _segment_batch(self):
        last_obs, _, _, last_next, last_terminal = self._segment[-1]
        num_agents = len(last_obs)
        internal = [i for i in range(num_agents) if i not in self._external]

        if last_terminal:
            bootstrap = {i: 0.0 for i in internal}
        else:
            _, values = self.network.predict(
                np.asarray([last_next[i] for i in internal], dtype=np.float64)
            )
            bootstrap = {i: float(values[row, 0]) for row, i in enumerate(internal)}

        states, actions, returns = [], [], []
        acc = dict(bootstrap)
        for obs, acts, reward, _, _ in reversed(self._segment):
            for i in internal:
                acc[i] = reward + self.spec.gamma * acc[i]
            for i in internal:
                states.append(obs[i])
                actions.append(acts[i])
                returns.append(acc[i])
        return states, actions, returns
