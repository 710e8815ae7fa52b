import json

import numpy as np
import pytest

from rlframe.envs import CartPole, TankBattle
from rlframe.errors import SpecValidationError
from rlframe.learn import LearnerSpec, MonitorSpec, create_learner
from rlframe.net import create_network, parse_config

from helpers import config_doc


def a3c_net(in_dim, actions, hidden=32, seed=0, lr=3e-3):
    actor = parse_config(json.dumps(config_doc(
        (in_dim, hidden, actions), ("tanh", "softmax"), loss="a3c_composite",
        optimizer="adam", learning_rate=lr, seed=seed,
        loss_params={"value_coef": 0.5, "entropy_coef": 0.01},
    )))
    critic = parse_config(json.dumps(config_doc(
        (in_dim, hidden, 1), ("tanh", "linear"), loss="mse",
        optimizer="adam", learning_rate=lr, seed=seed + 1,
    )))
    return create_network([actor, critic])


def test_nstep_must_match_training_interval_when_given():
    with pytest.raises(SpecValidationError):
        create_learner(
            MonitorSpec(training_interval=5),
            LearnerSpec(algorithm="a3c", n_step=3, seed=0),
            CartPole(seed=0),
            network=a3c_net(4, 2),
        )


def test_sampling_follows_policy_probabilities():
    net = a3c_net(4, 2, seed=4)
    handle = create_learner(
        MonitorSpec(training_interval=5),
        LearnerSpec(algorithm="a3c", seed=4),
        CartPole(seed=4),
        network=net,
    )
    learner = handle.learner
    state = np.zeros(4)
    probs = net.predict(state)[0][0]
    draws = np.array([learner.select_action(state, "train") for _ in range(4000)])
    freq1 = (draws == 1).mean()
    assert abs(freq1 - probs[1]) < 0.05


def test_eval_action_is_argmax_of_policy():
    net = a3c_net(4, 2, seed=5)
    handle = create_learner(
        MonitorSpec(training_interval=5),
        LearnerSpec(algorithm="a3c", seed=5),
        CartPole(seed=5),
        network=net,
    )
    state = np.ones(4) * 0.01
    probs = net.predict(state)[0][0]
    assert handle.learner.select_action(state, "eval") == int(np.argmax(probs))


def test_short_training_improves_cartpole_returns():
    net = a3c_net(4, 2, seed=11)
    handle = create_learner(
        MonitorSpec(epochs=1, steps_per_epoch=15_000, training_interval=5,
                    report_frequency=10**9, eval_episodes=20),
        LearnerSpec(algorithm="a3c", gamma=0.99, seed=11),
        CartPole(seed=11),
        network=net,
    )
    before = handle.evaluate(episodes=20)
    handle.train()
    after = handle.evaluate(episodes=20)
    assert after.mean()[0] > before.mean()[0] + 20


def test_multi_agent_tankbattle_training_runs_and_flattens_agents():
    env = TankBattle(seed=2, agents=2, max_steps=40)
    net = a3c_net(121, 6, hidden=16, seed=2)
    handle = create_learner(
        MonitorSpec(epochs=1, steps_per_epoch=200, training_interval=5,
                    report_frequency=10**9),
        LearnerSpec(algorithm="a3c", gamma=0.99, seed=2),
        env,
        network=net,
    )
    report = handle.train()
    assert report.total_steps == 200
    assert net.step_counter > 0


def test_training_over_a_human_slot_wrapper_excludes_the_slot():
    from rlframe.human import attach_human

    env = TankBattle(seed=4, agents=2, max_steps=40, spawn_interval=0)
    wrapper, _ = attach_human(env, 0, 5)
    net = a3c_net(121, 6, hidden=16, seed=4)
    handle = create_learner(
        MonitorSpec(training_interval=5),
        LearnerSpec(algorithm="a3c", gamma=0.99, seed=4),
        wrapper,
        network=net,
    )
    result = handle.learner.run_episode(wrapper, "train")
    assert net.step_counter == result.steps // 5
    # with no client connected the slot plays its default action every tick,
    # regardless of what the learner predicted for it
    assert wrapper.action_log
    assert all(actions[0] == 5 for _, actions in wrapper.action_log)


def test_segment_batch_excludes_external_agents():
    env = TankBattle(seed=3, agents=2, max_steps=30)
    env.external_agent_indices = lambda: frozenset({0})
    net = a3c_net(121, 6, hidden=16, seed=3)
    handle = create_learner(
        MonitorSpec(training_interval=5),
        LearnerSpec(algorithm="a3c", seed=3),
        env,
        network=net,
    )
    learner = handle.learner
    learner.begin_episode(env, "train")
    states = env.get_state()
    for _ in range(5):
        learner.on_step(states, [4, 1], np.array([0.0]), states, False)
    batch_states, batch_actions, batch_returns = learner._segment_batch()
    # only agent 1 contributes: five rows, all with agent 1's action
    assert len(batch_states) == 5
    assert batch_actions == [1] * 5
