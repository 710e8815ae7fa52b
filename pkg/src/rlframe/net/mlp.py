"""Manual dense-network math: init, forward, backward, losses.

Parameters for a layer chain are a flat list [W0, b0, W1, b1, ...] of
float64 arrays.  Forward passes are pure (no state mutation), so they are
safe to run from many threads; gradients are produced by hand-written
backward passes and validated against finite differences in the test suite.
"""

from __future__ import annotations

import numpy as np

from rlframe.errors import MissingKey, ShapeError
from rlframe.net.config import NetworkConfig
from rlframe.seeding import make_rng


def init_params(config: NetworkConfig) -> list[np.ndarray]:
    """He-uniform for relu layers, Xavier-uniform otherwise; zero biases."""
    rng = make_rng(config.seed)
    params: list[np.ndarray] = []
    for layer in config.layers:
        if layer.activation == "relu":
            limit = np.sqrt(6.0 / layer.in_dim)
        else:
            limit = np.sqrt(6.0 / (layer.in_dim + layer.out_dim))
        params.append(rng.uniform(-limit, limit, size=(layer.in_dim, layer.out_dim)))
        params.append(np.zeros(layer.out_dim))
    return params


def _activate(name: str, z: np.ndarray) -> np.ndarray:
    if name == "relu":
        return np.maximum(z, 0.0)
    if name == "tanh":
        return np.tanh(z)
    if name == "linear":
        return z
    if name == "softmax":
        e = np.exp(z - z.max(axis=-1, keepdims=True))
        return e / e.sum(axis=-1, keepdims=True)
    raise ValueError(f"unknown activation {name!r}")


def _activation_backward(name: str, z, a, d_a):
    if name == "relu":
        return d_a * (z > 0.0)
    if name == "tanh":
        return d_a * (1.0 - a * a)
    if name == "linear":
        return d_a
    if name == "softmax":
        return a * (d_a - np.sum(d_a * a, axis=-1, keepdims=True))
    raise ValueError(f"unknown activation {name!r}")


def as_batch(states, in_dim: int) -> np.ndarray:
    x = np.asarray(states, dtype=np.float64)
    if x.ndim == 1:
        x = x[None, :]
    if x.ndim != 2 or x.shape[1] != in_dim:
        raise ShapeError(f"expected input of width {in_dim}, got shape {x.shape}")
    return x


def forward(config: NetworkConfig, params, x: np.ndarray):
    """Returns (output, cache); cache holds per-layer inputs and z, a."""
    cache = []
    out = x
    for i, layer in enumerate(config.layers):
        W, b = params[2 * i], params[2 * i + 1]
        z = out @ W + b
        a = _activate(layer.activation, z)
        cache.append((out, z, a))
        out = a
    return out, cache


def backward(config: NetworkConfig, params, cache, d_out):
    """Gradients for every tensor given dLoss/d(final activation)."""
    grads = [None] * len(params)
    d_a = d_out
    for i in reversed(range(len(config.layers))):
        layer = config.layers[i]
        x, z, a = cache[i]
        dz = _activation_backward(layer.activation, z, a, d_a)
        grads[2 * i] = x.T @ dz
        grads[2 * i + 1] = dz.sum(axis=0)
        if i > 0:
            d_a = dz @ params[2 * i].T
    return grads


# --- losses -----------------------------------------------------------------
#
# Each loss maps (outputs per config, data dict) to the scalar batch loss and
# the gradient of that loss with respect to each config's final activation.


def _fetch(data: dict, key: str):
    if key not in data:
        raise MissingKey(f"data dictionary is missing required key {key!r}")
    return data[key]


def mse_loss(outputs, data):
    pred = outputs[0]
    target = np.asarray(_fetch(data, "targets"), dtype=np.float64)
    if target.ndim == 1:
        target = target[:, None]
    if target.shape != pred.shape:
        raise ShapeError(f"targets shape {target.shape} != predictions {pred.shape}")
    batch = pred.shape[0]
    diff = pred - target
    loss = float(np.sum(diff * diff) / batch)
    return loss, [2.0 * diff / batch]


def cross_entropy_loss(outputs, data):
    probs = outputs[0]
    actions = np.asarray(_fetch(data, "actions"))
    if actions.shape != (probs.shape[0],):
        raise ShapeError(f"actions shape {actions.shape} != batch {probs.shape[0]}")
    batch = probs.shape[0]
    rows = np.arange(batch)
    picked = probs[rows, actions]
    loss = float(-np.sum(np.log(picked)) / batch)
    d_probs = np.zeros_like(probs)
    d_probs[rows, actions] = -1.0 / (picked * batch)
    return loss, [d_probs]


def a3c_composite_loss(outputs, data, value_coef: float, entropy_coef: float):
    """Actor-critic loss over (policy probs, state values).

    policy term   -log pi(a|s) * advantage, advantage held constant
    value term    value_coef * mean squared (return - V)
    entropy bonus entropy_coef * mean policy entropy, subtracted
    """
    probs, values = outputs[0], outputs[1]
    actions = np.asarray(_fetch(data, "actions"))
    returns = np.asarray(_fetch(data, "returns"), dtype=np.float64)
    batch = probs.shape[0]
    if actions.shape != (batch,):
        raise ShapeError(f"actions shape {actions.shape} != batch {batch}")
    if returns.shape != (batch,):
        raise ShapeError(f"returns shape {returns.shape} != batch {batch}")
    if values.shape != (batch, 1):
        raise ShapeError(f"critic output shape {values.shape}, expected ({batch}, 1)")

    v = values[:, 0]
    advantage = returns - v  # constant in the policy term
    rows = np.arange(batch)
    picked = probs[rows, actions]
    log_probs = np.log(probs)

    policy_loss = float(-np.sum(np.log(picked) * advantage) / batch)
    value_loss = float(np.sum((returns - v) ** 2) / batch)
    entropy = float(-np.sum(probs * log_probs) / batch)
    loss = policy_loss + value_coef * value_loss - entropy_coef * entropy

    d_probs = entropy_coef * (log_probs + 1.0) / batch
    d_probs[rows, actions] -= advantage / (picked * batch)
    d_values = (value_coef * 2.0 * (v - returns) / batch)[:, None]
    return loss, [d_probs, d_values]
