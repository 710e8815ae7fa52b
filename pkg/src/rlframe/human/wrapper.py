"""Environment wrapper that injects human actions into agent slots.

The framework-facing contract is untouched: step() still takes one action
per agent and returns the reward vector.  For agents with an attached
slot the submitted action is replaced by the slot's resolution, so
learners keep predicting blindly while humans drive their agents.
"""

from __future__ import annotations

from rlframe.errors import InvalidAction, SlotTaken, UnsupportedEnvironment
from rlframe.human.slots import HumanSlot


class HumanPlayEnv:
    def __init__(self, env):
        if not getattr(env, "supports_human_play", False):
            raise UnsupportedEnvironment(
                f"{type(env).__name__} does not support human slots"
            )
        self.env = env
        self.slots: dict[int, HumanSlot] = {}
        self.action_log: list[tuple[int, list[int]]] = []
        self.consumed_log: list[tuple[int, int, int]] = []  # arrival, applied, action

    # --- slot management ------------------------------------------------------

    def attach_human(self, agent_index: int, default_action: int) -> HumanSlot:
        n = self.env.get_number_of_agents()
        if not 0 <= agent_index < n:
            raise InvalidAction(f"agent index {agent_index} outside [0, {n})")
        if agent_index in self.slots:
            raise SlotTaken(f"agent {agent_index} already has a human slot")
        if not 0 <= default_action < self.env.descriptor.action_space[agent_index]:
            raise InvalidAction(f"default action {default_action} out of range")
        slot = HumanSlot(agent_index, default_action)
        self.slots[agent_index] = slot
        return slot

    def external_agent_indices(self) -> frozenset:
        return frozenset(self.slots)

    # --- environment contract ----------------------------------------------------

    @property
    def descriptor(self):
        return self.env.descriptor

    @property
    def supports_human_play(self):
        return True

    @property
    def seed(self):
        return self.env.seed

    @property
    def steps(self):
        return self.env.steps

    @property
    def max_steps(self):
        return self.env.max_steps

    def clone(self) -> "HumanPlayEnv":
        twin = HumanPlayEnv(self.env.clone())
        for slot in self.slots.values():
            twin.attach_human(slot.agent_index, slot.default_action)
        return twin

    def reseed(self, seed: int) -> None:
        self.env.reseed(seed)

    def reset(self) -> None:
        self.env.reset()

    def step(self, actions):
        tick = self.env.steps + 1
        resolved = [int(a) for a in actions]
        for index, slot in self.slots.items():
            action, arrival = slot.resolve(tick)
            resolved[index] = action
            if arrival is not None:
                self.consumed_log.append((arrival, tick, action))
        rewards = self.env.step(resolved)
        self.action_log.append((tick, resolved))
        return rewards

    def get_state(self):
        return self.env.get_state()

    def is_terminal(self) -> bool:
        return self.env.is_terminal()

    def get_number_of_objectives(self) -> int:
        return self.env.get_number_of_objectives()

    def get_number_of_agents(self) -> int:
        return self.env.get_number_of_agents()

    def discrete_state_count(self):
        return self.env.discrete_state_count()

    def discrete_state_index(self):
        return self.env.discrete_state_index()

    def render_payload(self):
        payload = self.env.render_payload()
        if payload is not None:
            payload = dict(payload)
            payload["human_agents"] = sorted(self.slots)
        return payload


def attach_human(env, agent_index: int, default_action: int):
    """Wrap env (if needed) and attach a human slot; returns (wrapper, slot)."""
    wrapper = env if isinstance(env, HumanPlayEnv) else HumanPlayEnv(env)
    slot = wrapper.attach_human(agent_index, default_action)
    return wrapper, slot
