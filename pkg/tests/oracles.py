"""Independent oracles used by several test modules.

Everything here is deliberately written straight from the documented rules,
not by importing framework internals, so tests compare two separately
authored routes to the same answer.
"""

from __future__ import annotations

import math

import numpy as np

# --- 4x4 grid as a lookup table ------------------------------------------------

GRID_SIZE = 4
GRID_GOAL = 15  # cell (3, 3), index y*4 + x
GRID_ACTIONS = 4
_DELTAS = {0: (0, -1), 1: (0, 1), 2: (-1, 0), 3: (1, 0)}  # up, down, left, right


def grid_transition(state: int, action: int) -> tuple[int, float, bool]:
    """(next state, reward, terminal) for one cell/action pair."""
    x, y = state % GRID_SIZE, state // GRID_SIZE
    dx, dy = _DELTAS[action]
    nx, ny = x + dx, y + dy
    if not (0 <= nx < GRID_SIZE and 0 <= ny < GRID_SIZE):
        nx, ny = x, y
    nstate = ny * GRID_SIZE + nx
    if nstate == GRID_GOAL:
        return nstate, 1.0, True
    return nstate, 0.0, False


def grid_transition_table() -> dict[tuple[int, int], tuple[int, float, bool]]:
    return {
        (s, a): grid_transition(s, a)
        for s in range(GRID_SIZE * GRID_SIZE)
        for a in range(GRID_ACTIONS)
    }


def grid_value_iteration(gamma: float, tol: float = 1e-12) -> np.ndarray:
    """Optimal state values for the 16-state grid MDP."""
    values = np.zeros(GRID_SIZE * GRID_SIZE)
    while True:
        new = np.zeros_like(values)
        for s in range(GRID_SIZE * GRID_SIZE):
            if s == GRID_GOAL:
                continue
            best = -math.inf
            for a in range(GRID_ACTIONS):
                ns, r, terminal = grid_transition(s, a)
                best = max(best, r + (0.0 if terminal else gamma * values[ns]))
            new[s] = best
        if np.max(np.abs(new - values)) < tol:
            return new
        values = new


def grid_optimal_actions(gamma: float) -> dict[int, set[int]]:
    """Set of optimal actions per non-goal state under value iteration."""
    values = grid_value_iteration(gamma)
    optimal = {}
    for s in range(GRID_SIZE * GRID_SIZE):
        if s == GRID_GOAL:
            continue
        q = []
        for a in range(GRID_ACTIONS):
            ns, r, terminal = grid_transition(s, a)
            q.append(r + (0.0 if terminal else gamma * values[ns]))
        best = max(q)
        optimal[s] = {a for a in range(GRID_ACTIONS) if q[a] > best - 1e-9}
    return optimal


def grid_policy_state_values(policy, gamma: float) -> np.ndarray:
    """Evaluate a deterministic policy (callable state -> action) exactly."""
    values = np.zeros(GRID_SIZE * GRID_SIZE)
    while True:
        new = np.zeros_like(values)
        for s in range(GRID_SIZE * GRID_SIZE):
            if s == GRID_GOAL:
                continue
            ns, r, terminal = grid_transition(s, policy(s))
            new[s] = r + (0.0 if terminal else gamma * values[ns])
        if np.max(np.abs(new - values)) < 1e-12:
            return values
        values = new


def grid_rollout(policy, start: int = 0, max_steps: int = 100):
    """Roll a deterministic policy forward; returns (states, total reward)."""
    s, total, states = start, 0.0, [start]
    for _ in range(max_steps):
        s, r, terminal = grid_transition(s, policy(s))
        total += r
        states.append(s)
        if terminal:
            break
    return states, total


# --- cart-pole dynamics --------------------------------------------------------


def cartpole_step(state, action):
    """One Euler step of the classical cart-pole equations."""
    x, x_dot, theta, theta_dot = state
    force = 10.0 if action == 1 else -10.0
    masspole, total_mass, half_len = 0.1, 1.1, 0.5
    temp = (force + masspole * half_len * theta_dot**2 * math.sin(theta)) / total_mass
    theta_acc = (9.8 * math.sin(theta) - math.cos(theta) * temp) / (
        half_len * (4.0 / 3.0 - masspole * math.cos(theta) ** 2 / total_mass)
    )
    x_acc = temp - masspole * half_len * theta_acc * math.cos(theta) / total_mass
    return np.array(
        [
            x + 0.02 * x_dot,
            x_dot + 0.02 * x_acc,
            theta + 0.02 * theta_dot,
            theta_dot + 0.02 * theta_acc,
        ]
    )


def cartpole_failed(state) -> bool:
    return abs(state[0]) > 2.4 or abs(state[2]) > 12.0 * math.pi / 180.0


# --- mountain car dynamics ------------------------------------------------------


def mountain_car_step(x, v, thrust):
    v2 = v + 0.001 * thrust - 0.0025 * math.cos(3.0 * x)
    v2 = min(max(v2, -0.07), 0.07)
    x2 = min(max(x + v2, -1.2), 0.6)
    return x2, v2


# --- returns ---------------------------------------------------------------------


def backward_discounted_return(rewards, gamma):
    """Horner-style accumulation from the tail."""
    acc = 0.0
    for r in reversed(list(rewards)):
        acc = r + gamma * acc
    return acc


# --- dense forward pass ------------------------------------------------------------


def forward_chain(x, layers):
    """Straight-line forward pass: layers = [(W, b, activation_name), ...]."""
    out = np.asarray(x, dtype=np.float64)
    for W, b, act in layers:
        z = out @ W + b
        if act == "relu":
            out = np.maximum(z, 0.0)
        elif act == "tanh":
            out = np.tanh(z)
        elif act == "linear":
            out = z
        elif act == "softmax":
            e = np.exp(z - z.max(axis=-1, keepdims=True))
            out = e / e.sum(axis=-1, keepdims=True)
        else:
            raise ValueError(act)
    return out
