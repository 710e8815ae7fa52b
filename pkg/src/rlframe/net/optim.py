"""SGD and Adam parameter updates with serializable state."""

from __future__ import annotations

import numpy as np

from rlframe.net.config import OptimizerSpec


class Sgd:
    kind = "sgd"

    def __init__(self, spec: OptimizerSpec, params):
        self.lr = spec.learning_rate

    def apply(self, params, grads):
        for p, g in zip(params, grads):
            p -= self.lr * g

    def state_dict(self):
        return {}

    def load_state_dict(self, state):
        pass


class Adam:
    kind = "adam"

    def __init__(self, spec: OptimizerSpec, params):
        self.lr = spec.learning_rate
        self.beta1 = spec.beta1
        self.beta2 = spec.beta2
        self.eps = spec.epsilon
        self.t = 0
        self.m = [np.zeros_like(p) for p in params]
        self.v = [np.zeros_like(p) for p in params]

    def apply(self, params, grads):
        self.t += 1
        correction1 = 1.0 - self.beta1**self.t
        correction2 = 1.0 - self.beta2**self.t
        for p, g, m, v in zip(params, grads, self.m, self.v):
            m *= self.beta1
            m += (1.0 - self.beta1) * g
            v *= self.beta2
            v += (1.0 - self.beta2) * g * g
            p -= self.lr * (m / correction1) / (np.sqrt(v / correction2) + self.eps)

    def state_dict(self):
        return {"t": self.t, "m": self.m, "v": self.v}

    def load_state_dict(self, state):
        self.t = int(state["t"])
        self.m = [np.array(a, dtype=np.float64) for a in state["m"]]
        self.v = [np.array(a, dtype=np.float64) for a in state["v"]]


def make_optimizer(spec: OptimizerSpec, params):
    if spec.kind == "sgd":
        return Sgd(spec, params)
    if spec.kind == "adam":
        return Adam(spec, params)
    raise ValueError(f"unknown optimizer {spec.kind!r}")
