import math

import numpy as np
import pytest

from rlframe.envs import MountainCarMO

from oracles import mountain_car_step


def test_reset_ranges():
    for seed in range(5):
        env = MountainCarMO(seed=seed)
        env.reset()
        x, v = env.get_state()[0]
        assert -0.6 <= x <= -0.4
        assert v == 0.0


def test_counts():
    env = MountainCarMO(seed=3)
    assert env.get_number_of_objectives() == 3
    assert env.get_number_of_agents() == 1


def test_forward_step_from_known_state():
    env = MountainCarMO(seed=0)
    env._x, env._v = -0.5, 0.0
    rewards = env.step([2])  # thrust +1
    expected_v = 0.001 * 1 - 0.0025 * math.cos(3 * -0.5)
    assert env.get_state()[0][1] == pytest.approx(expected_v, abs=1e-15)
    assert env.get_state()[0][0] == pytest.approx(-0.5 + expected_v, abs=1e-15)
    assert rewards.tolist() == [-1.0, 0.0, -1.0]


def test_reversal_penalty_only_on_sign_flip():
    env = MountainCarMO(seed=0)
    env.reset()
    assert env.step([2]).tolist() == [-1.0, 0.0, -1.0]   # first thrust: no flip
    assert env.step([0]).tolist() == [-1.0, -1.0, -1.0]  # +1 -> -1 flips
    assert env.step([1]).tolist() == [-1.0, 0.0, 0.0]    # coast: no flip, no accel
    assert env.step([0]).tolist() == [-1.0, 0.0, -1.0]   # -1 after coast: no flip


def test_dynamics_match_oracle_trajectory():
    env = MountainCarMO(seed=9)
    env.reset()
    x, v = env.get_state()[0]
    rng = np.random.default_rng(1)
    for _ in range(500):
        if env.is_terminal():
            break
        action = int(rng.integers(3))
        env.step([action])
        x, v = mountain_car_step(x, v, action - 1)
        sx, sv = env.get_state()[0]
        assert sx == pytest.approx(x, abs=1e-15)
        assert sv == pytest.approx(v, abs=1e-15)


def test_discretization_covers_grid():
    env = MountainCarMO(seed=4)
    assert env.discrete_state_count() == 1600
    env._x, env._v = -1.2, -0.07
    assert env.discrete_state_index() == 0
    env._x, env._v = 0.6, 0.07
    assert env.discrete_state_index() == 1599
    env._x, env._v = -0.5, 0.0
    idx = env.discrete_state_index()
    assert 0 <= idx < 1600


def test_goal_terminates():
    env = MountainCarMO(seed=4)
    env._x, env._v = 0.49, 0.07
    env.step([2])
    assert env.get_state()[0][0] >= 0.5
    assert env.is_terminal()


def test_horizon():
    env = MountainCarMO(seed=4, max_steps=50)
    while not env.is_terminal():
        env.step([1])
    assert env.steps == 50
