"""Framework-facing environment contract.

Every environment exposes the same seven operations: clone, reset, step,
get_state, is_terminal, get_number_of_objectives, get_number_of_agents.
Observations are per-agent float vectors; step() takes one discrete action
per agent and returns one reward per objective.

A single environment instance is confined to one thread at a time; clone()
is the sanctioned way to obtain per-thread instances.  Clones copy the
current dynamic state but draw from a fresh random stream derived from
(parent seed, clone ordinal).
"""

from __future__ import annotations

import copy
from dataclasses import dataclass

import numpy as np

from rlframe.errors import InvalidAction, StepAfterTerminal
from rlframe.seeding import derive_seed, make_rng


@dataclass(frozen=True)
class EnvDescriptor:
    """Static environment metadata.

    action_space holds one discrete action count per agent.  When
    fully_observable is set, all per-agent observations are identical.
    """

    num_agents: int
    num_objectives: int
    action_space: tuple[int, ...]
    state_dim: int
    fully_observable: bool
    deterministic: bool

    def __post_init__(self):
        if self.num_agents < 1:
            raise ValueError("num_agents must be >= 1")
        if self.num_objectives < 1:
            raise ValueError("num_objectives must be >= 1")
        if len(self.action_space) != self.num_agents:
            raise ValueError("action_space needs one entry per agent")
        if any(a < 1 for a in self.action_space):
            raise ValueError("action counts must be >= 1")
        if self.state_dim < 1:
            raise ValueError("state_dim must be >= 1")


class Environment:
    """Base class implementing the shared step/reset bookkeeping.

    Subclasses implement _do_reset, _do_step and _observe; the base class
    owns the step counter, horizon, terminal latching, and action
    validation so the contract is uniform across environments.
    """

    #: set by environments that allow a live human to drive an agent slot
    supports_human_play = False

    def __init__(self, descriptor: EnvDescriptor, seed: int, max_steps: int):
        self._descriptor = descriptor
        self._seed = int(seed)
        self._max_steps = int(max_steps)
        self._rng = make_rng(self._seed)
        self._steps = 0
        self._terminal = False
        self._clones = 0

    # --- contract -----------------------------------------------------------

    @property
    def descriptor(self) -> EnvDescriptor:
        return self._descriptor

    @property
    def seed(self) -> int:
        return self._seed

    @property
    def steps(self) -> int:
        return self._steps

    @property
    def max_steps(self) -> int:
        return self._max_steps

    def clone(self) -> "Environment":
        """Duplicate this environment.

        The clone shares descriptor, rules, and current dynamic state, but
        receives a random stream derived from (parent seed, clone ordinal),
        so stochastic clones diverge reproducibly.  Steps on the clone never
        affect the parent.
        """
        self._clones += 1
        twin = copy.deepcopy(self)
        twin._seed = derive_seed(self._seed, self._clones)
        twin._rng = make_rng(twin._seed)
        twin._clones = 0
        return twin

    def reseed(self, seed: int) -> None:
        """Replace the random stream; used for reproducible evaluation."""
        self._seed = int(seed)
        self._rng = make_rng(self._seed)

    def external_agent_indices(self) -> frozenset[int]:
        """Agent slots driven from outside the learner (human play)."""
        return frozenset()

    def reset(self) -> None:
        """Return to episode start; idempotent."""
        self._steps = 0
        self._terminal = False
        self._do_reset()

    def step(self, actions) -> np.ndarray:
        """Advance one tick with one action per agent; returns M rewards."""
        if self._terminal:
            raise StepAfterTerminal("episode is terminal; call reset() first")
        actions = [int(a) for a in actions]
        if len(actions) != self._descriptor.num_agents:
            raise InvalidAction(
                f"expected {self._descriptor.num_agents} actions, got {len(actions)}"
            )
        for i, a in enumerate(actions):
            if not self._agent_accepts_actions(i):
                continue  # e.g. dead tanks: submitted actions are no-ops
            if not 0 <= a < self._descriptor.action_space[i]:
                raise InvalidAction(
                    f"action {a} for agent {i} outside [0, {self._descriptor.action_space[i]})"
                )
        rewards = np.asarray(self._do_step(actions), dtype=np.float64)
        self._steps += 1
        if self._steps >= self._max_steps:
            self._terminal = True
        return rewards

    def get_state(self) -> list[np.ndarray]:
        """Per-agent observation vectors, length num_agents."""
        return self._observe()

    def is_terminal(self) -> bool:
        return self._terminal

    def get_number_of_objectives(self) -> int:
        return self._descriptor.num_objectives

    def get_number_of_agents(self) -> int:
        return self._descriptor.num_agents

    # --- optional capabilities ------------------------------------------------

    def discrete_state_count(self) -> int | None:
        """Number of discrete states, or None when not tabularizable."""
        return None

    def discrete_state_index(self) -> int | None:
        """Current discrete state index (single-agent tabular envs only)."""
        return None

    def render_payload(self) -> dict | None:
        """Env-specific render data for live-play frames (None if not visual)."""
        return None

    # --- subclass hooks -------------------------------------------------------

    def _agent_accepts_actions(self, agent: int) -> bool:
        """False exempts the agent's submitted action from validation."""
        return True

    def _do_reset(self) -> None:
        raise NotImplementedError

    def _do_step(self, actions: list[int]):
        """Apply actions, return the M-reward sequence, set self._terminal."""
        raise NotImplementedError

    def _observe(self) -> list[np.ndarray]:
        raise NotImplementedError
