"""Factory: build a supervised learner from the two spec dictionaries.

create_learner validates the monitor and learner specs against the
environment (and network, for neural algorithms) and returns a handle
whose train()/evaluate() drive the attached monitor.
"""

from __future__ import annotations

from rlframe.errors import (
    IncompatibleNetwork,
    SpecValidationError,
    UnknownAlgorithm,
    WeightDimMismatch,
)
from rlframe.learn.actor_critic import A3CLearner
from rlframe.learn.monitor import Monitor
from rlframe.learn.tabular import MonteCarloLearner, MOQLearningLearner, QLearningLearner
from rlframe.learn.types import LearnerSpec, MonitorSpec

ALGORITHMS: dict[str, type] = {
    "q_learning": QLearningLearner,
    "monte_carlo": MonteCarloLearner,
    "mo_q_learning": MOQLearningLearner,
    "a3c": A3CLearner,
}


def register_algorithm(name: str, cls) -> None:
    ALGORITHMS[name] = cls


class LearnerHandle:
    """A learner bound to its monitor."""

    def __init__(self, learner, monitor: Monitor):
        self.learner = learner
        self.monitor = monitor

    def train(self):
        return self.monitor.train()

    def evaluate(self, episodes=None, checkpoint=None):
        return self.monitor.evaluate(episodes=episodes, checkpoint=checkpoint)


def _check_network(env, network):
    descriptor = env.descriptor
    action_counts = set(descriptor.action_space)
    if len(action_counts) != 1:
        raise IncompatibleNetwork(
            "shared-policy learning needs identical action spaces per agent"
        )
    actions = action_counts.pop()
    if network is None:
        raise SpecValidationError("algorithm 'a3c' requires a policy network")
    if len(network.configs) != 2:
        raise IncompatibleNetwork("a3c needs an (actor, critic) network pair")
    actor, critic = network.configs
    if actor.head_activation != "softmax":
        raise IncompatibleNetwork("actor head must be softmax")
    if actor.output_dim != actions:
        raise IncompatibleNetwork(
            f"actor outputs {actor.output_dim} actions, environment has {actions}"
        )
    if critic.output_dim != 1:
        raise IncompatibleNetwork("critic must output a single value")
    for name, config in (("actor", actor), ("critic", critic)):
        if config.input_dim != descriptor.state_dim:
            raise IncompatibleNetwork(
                f"{name} input width {config.input_dim} != state_dim {descriptor.state_dim}"
            )


def create_learner(monitor_spec: MonitorSpec, learner_spec: LearnerSpec, env,
                   network=None) -> LearnerHandle:
    monitor_spec.validate()
    learner_spec.validate()

    try:
        cls = ALGORITHMS[learner_spec.algorithm]
    except KeyError:
        raise UnknownAlgorithm(
            f"no algorithm named {learner_spec.algorithm!r}; known: {sorted(ALGORITHMS)}"
        ) from None

    objectives = env.get_number_of_objectives()
    if learner_spec.weights is not None and len(learner_spec.weights) != objectives:
        raise WeightDimMismatch(
            f"{len(learner_spec.weights)} weights for {objectives} objectives"
        )

    if cls.requires_network:
        _check_network(env, network)
        if learner_spec.n_step is not None and (
            learner_spec.n_step != monitor_spec.training_interval
        ):
            raise SpecValidationError(
                "n_step must equal the monitor's training_interval when both are set"
            )
    else:
        if env.discrete_state_count() is None:
            raise SpecValidationError(
                f"{learner_spec.algorithm!r} needs an environment with a discrete state index"
            )
        if learner_spec.threads != 1:
            raise SpecValidationError("tabular learners are single-threaded")
        if objectives > 1 and learner_spec.weights is None:
            raise SpecValidationError(
                "scalarization weights required on a multi-objective environment"
            )

    learner = cls(learner_spec, env, network)
    learner.training_interval = monitor_spec.training_interval
    return LearnerHandle(learner, Monitor(monitor_spec, learner))
