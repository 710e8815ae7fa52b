"""Policy network: parameter store plus forward/train/checkpoint services.

A PolicyNetwork aggregates one or more network configurations.  With a
single config it is a plain head (regression or classification); with two
configs and the a3c_composite loss the first config is the actor (softmax
head) and the second the critic (scalar head), and parameters are ordered
actor-first.

Forward passes are pure and may run concurrently from many threads.
train_network serializes parameter updates behind one writer lock, so a
fixed seed and data sequence gives a bit-identical parameter trajectory on
a single thread.
"""

from __future__ import annotations

import threading

import numpy as np

from rlframe.errors import MissingKey, ValidationError
from rlframe.net import checkpoint as ckpt
from rlframe.net import mlp
from rlframe.net.config import NetworkConfig
from rlframe.net.optim import make_optimizer


class PolicyNetwork:
    def __init__(self, configs):
        if isinstance(configs, NetworkConfig):
            configs = [configs]
        if not configs:
            raise ValidationError("configs", "at least one network config required")
        self.configs: list[NetworkConfig] = list(configs)

        loss = self.configs[0].loss.kind
        if loss == "a3c_composite":
            if len(self.configs) != 2:
                raise ValidationError(
                    "configs", "a3c_composite needs exactly two configs (actor, critic)"
                )
            if self.configs[0].head_activation != "softmax":
                raise ValidationError(
                    "configs[0]", "a3c_composite actor needs a softmax head"
                )
            if self.configs[1].output_dim != 1:
                raise ValidationError(
                    "configs[1]", "a3c_composite critic must output one value"
                )
        elif len(self.configs) != 1:
            raise ValidationError(
                "configs", f"loss {loss!r} supports exactly one config"
            )

        self._param_slices = []
        self.parameters: list[np.ndarray] = []
        for config in self.configs:
            tensors = mlp.init_params(config)
            start = len(self.parameters)
            self.parameters.extend(tensors)
            self._param_slices.append(slice(start, start + len(tensors)))
        self._optimizers = [
            make_optimizer(c.optimizer, self.parameters[s])
            for c, s in zip(self.configs, self._param_slices)
        ]
        self.step_counter = 0
        self._train_lock = threading.Lock()

    # --- forward -------------------------------------------------------------

    def _config_params(self, idx: int) -> list[np.ndarray]:
        return self.parameters[self._param_slices[idx]]

    def predict(self, states):
        """Forward pass through every config; probabilities for softmax
        heads, raw outputs otherwise.  Single-config nets return one array."""
        outputs = []
        for idx, config in enumerate(self.configs):
            x = mlp.as_batch(states, config.input_dim)
            out, _ = mlp.forward(config, self._config_params(idx), x)
            outputs.append(out)
        return outputs[0] if len(outputs) == 1 else outputs

    # --- training ---------------------------------------------------------------

    def train_network(self, data: dict) -> float:
        """One optimizer step from a data dictionary; returns the pre-step
        batch loss."""
        with self._train_lock:
            loss, grads_per_config = self._loss_and_grads(data)
            for idx, grads in enumerate(grads_per_config):
                self._optimizers[idx].apply(self._config_params(idx), grads)
            self.step_counter += 1
            return loss

    def _loss_and_grads(self, data):
        states = data.get("states", data.get("inputs"))
        if states is None:
            raise MissingKey("data dictionary needs 'states' (or 'inputs')")
        loss_spec = self.configs[0].loss

        outputs, caches = [], []
        for idx, config in enumerate(self.configs):
            x = mlp.as_batch(states, config.input_dim)
            out, cache = mlp.forward(config, self._config_params(idx), x)
            outputs.append(out)
            caches.append(cache)

        if loss_spec.kind == "mse":
            loss, d_outputs = mlp.mse_loss(outputs, data)
        elif loss_spec.kind == "cross_entropy":
            loss, d_outputs = mlp.cross_entropy_loss(outputs, data)
        else:
            loss, d_outputs = mlp.a3c_composite_loss(
                outputs, data, loss_spec.value_coef, loss_spec.entropy_coef
            )

        grads_per_config = [
            mlp.backward(config, self._config_params(idx), caches[idx], d_outputs[idx])
            for idx, config in enumerate(self.configs)
        ]
        return loss, grads_per_config

    # --- checkpointing --------------------------------------------------------------

    def save_model(self, path) -> None:
        with self._train_lock:
            ckpt.save_checkpoint(
                path, self.configs, self.parameters, self._optimizers, self.step_counter
            )

    def load_model(self, path) -> None:
        with self._train_lock:
            tensors, opt_states, step_counter = ckpt.load_checkpoint(
                path,
                self.configs,
                self.parameters,
                [
                    (opt, self._config_params(idx))
                    for idx, opt in enumerate(self._optimizers)
                ],
            )
            for current, loaded in zip(self.parameters, tensors):
                current[...] = loaded
            for opt, state in zip(self._optimizers, opt_states):
                if state:
                    opt.load_state_dict(state)
            self.step_counter = step_counter


def create_network(configs) -> PolicyNetwork:
    """Instantiate a policy network from one or more configurations."""
    return PolicyNetwork(configs)
