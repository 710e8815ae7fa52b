import json

import numpy as np
import pytest

from rlframe.envs import CartPole, GridWorld, MountainCarMO
from rlframe.errors import (
    IncompatibleNetwork,
    SpecValidationError,
    TrainingAborted,
    UnknownAlgorithm,
)
from rlframe.learn import LearnerSpec, MonitorSpec, create_learner
from rlframe.net import create_network, parse_config

from helpers import config_doc


def cartpole_net(actions=2, seed=0, hidden=16):
    actor = parse_config(json.dumps(config_doc(
        (4, hidden, actions), ("tanh", "softmax"), loss="a3c_composite",
        optimizer="adam", learning_rate=1e-3, seed=seed,
    )))
    critic = parse_config(json.dumps(config_doc(
        (4, hidden, 1), ("tanh", "linear"), loss="mse",
        optimizer="adam", learning_rate=1e-3, seed=seed + 1,
    )))
    return create_network([actor, critic])


def test_factory_builds_tabular_learner_without_network():
    handle = create_learner(
        MonitorSpec(), LearnerSpec(algorithm="q_learning", seed=0), GridWorld(seed=0)
    )
    assert handle.learner.network is None


def test_factory_rejects_unknown_algorithm():
    with pytest.raises(UnknownAlgorithm):
        create_learner(
            MonitorSpec(), LearnerSpec(algorithm="dqn", seed=0), GridWorld(seed=0)
        )


def test_factory_rejects_tabular_on_continuous_env():
    with pytest.raises(SpecValidationError):
        create_learner(
            MonitorSpec(), LearnerSpec(algorithm="q_learning", seed=0), CartPole(seed=0)
        )


def test_factory_accepts_matching_a3c_network():
    handle = create_learner(
        MonitorSpec(training_interval=5),
        LearnerSpec(algorithm="a3c", seed=0),
        CartPole(seed=0),
        network=cartpole_net(),
    )
    assert handle.learner.network is not None


def test_factory_rejects_wrong_actor_head_width():
    with pytest.raises(IncompatibleNetwork):
        create_learner(
            MonitorSpec(),
            LearnerSpec(algorithm="a3c", seed=0),
            CartPole(seed=0),
            network=cartpole_net(actions=3),
        )


def test_factory_rejects_missing_network():
    with pytest.raises(SpecValidationError):
        create_learner(
            MonitorSpec(), LearnerSpec(algorithm="a3c", seed=0), CartPole(seed=0)
        )


def test_zero_step_budget_returns_empty_report_and_touches_nothing():
    net = cartpole_net()
    before = [p.copy() for p in net.parameters]
    handle = create_learner(
        MonitorSpec(epochs=1, steps_per_epoch=0, training_interval=5),
        LearnerSpec(algorithm="a3c", seed=0),
        CartPole(seed=0),
        network=net,
    )
    report = handle.train()
    assert report.total_episodes == 0
    assert report.total_steps == 0
    for b, p in zip(before, net.parameters):
        assert np.array_equal(b, p)


def test_training_cadence_floor_t_over_l():
    for episode_seed in (0, 1, 2):
        net = cartpole_net(seed=episode_seed)
        env = CartPole(seed=episode_seed)
        handle = create_learner(
            MonitorSpec(training_interval=5),
            LearnerSpec(algorithm="a3c", seed=episode_seed),
            env,
            network=net,
        )
        learner = handle.learner
        result = learner.run_episode(env, "train")
        assert net.step_counter == result.steps // 5, (
            f"T={result.steps}, counter={net.step_counter}"
        )


def test_single_thread_determinism_report_and_parameters():
    def run():
        net = cartpole_net(seed=5)
        handle = create_learner(
            MonitorSpec(epochs=2, steps_per_epoch=400, training_interval=5,
                        report_frequency=10_000),
            LearnerSpec(algorithm="a3c", gamma=0.99, threads=1, seed=5),
            CartPole(seed=9),
            network=net,
        )
        report = handle.train()
        return report.deterministic_summary(), [p.copy() for p in net.parameters]

    (summary_a, params_a), (summary_b, params_b) = run(), run()
    assert summary_a == summary_b
    for a, b in zip(params_a, params_b):
        assert np.array_equal(a, b)


def test_monitor_counts_each_episode_exactly_once_across_threads():
    handle = create_learner(
        MonitorSpec(epochs=1, steps_per_epoch=3000, training_interval=5,
                    report_frequency=10_000),
        LearnerSpec(algorithm="a3c", threads=4, seed=3),
        CartPole(seed=4),
        network=cartpole_net(seed=6),
    )
    report = handle.train()
    assert sum(report.thread_episode_counts.values()) == report.total_episodes
    assert sorted(r.episode for r in report.episodes) == list(
        range(1, report.total_episodes + 1)
    )
    assert report.total_steps <= 3000


class ExplodingEnv(GridWorld):
    def __init__(self, seed=0, fail_at=7):
        super().__init__(seed=seed)
        self.fail_at = fail_at

    def _do_step(self, actions):
        if self.steps + 1 >= self.fail_at:
            raise RuntimeError("boom")
        return super()._do_step(actions)


def test_thread_failure_surfaces_as_training_aborted_with_partial_report():
    env = ExplodingEnv(seed=0, fail_at=7)
    handle = create_learner(
        MonitorSpec(epochs=1, steps_per_epoch=10_000),
        LearnerSpec(algorithm="q_learning", seed=0),
        env,
    )
    with pytest.raises(TrainingAborted) as err:
        handle.train()
    assert err.value.report is not None
    assert err.value.report.total_steps <= 7


def test_evaluate_is_update_free_and_repeatable():
    net = cartpole_net(seed=8)
    handle = create_learner(
        MonitorSpec(eval_episodes=5, training_interval=5),
        LearnerSpec(algorithm="a3c", seed=8),
        CartPole(seed=2),
        network=net,
    )
    before = [p.copy() for p in net.parameters]
    first = handle.evaluate()
    second = handle.evaluate()
    for b, p in zip(before, net.parameters):
        assert np.array_equal(b, p)
    assert net.step_counter == 0
    assert first.summary() == second.summary()


def test_evaluate_report_has_mean_and_std_per_objective():
    env = MountainCarMO(seed=5, max_steps=80)
    handle = create_learner(
        MonitorSpec(eval_episodes=4),
        LearnerSpec(algorithm="mo_q_learning", weights=[1.0, 0.0, 0.0], seed=0),
        env,
    )
    report = handle.evaluate()
    assert len(report.returns) == 4
    assert len(report.mean()) == 3
    assert len(report.std()) == 3


def test_reward_clipping_bounds_everything_updates_see():
    from rlframe.learn.tabular import QLearningLearner

    seen = []

    class Spy(QLearningLearner):
        def on_step(self, obs, actions, rewards, next_obs, terminal):
            seen.append(np.array(rewards))
            super().on_step(obs, actions, rewards, next_obs, terminal)

    env = MountainCarMO(seed=5, max_steps=60)
    spec = LearnerSpec(algorithm="q_learning", weights=[1.0, 1.0, 1.0],
                       reward_clip=0.5, seed=0).validate()
    learner = Spy(spec, env)
    learner.run_episode(env, "train")
    assert seen
    for r in seen:
        assert np.all(r >= -0.5) and np.all(r <= 0.5)


def test_checkpoints_written_at_cadence_and_end(tmp_path):
    handle = create_learner(
        MonitorSpec(epochs=4, steps_per_epoch=150, training_interval=5,
                    checkpoint_dir=str(tmp_path), checkpoint_interval=2,
                    report_frequency=10_000),
        LearnerSpec(algorithm="a3c", seed=1),
        CartPole(seed=1),
        network=cartpole_net(seed=2),
    )
    report = handle.train()
    names = {p.split("/")[-1] for p in report.checkpoints}
    assert "final.ckpt" in names
    assert (tmp_path / "final.ckpt").exists()
