"""Declarative network configuration.

A configuration is a JSON document (schema_version 1) describing a dense
layer chain, a loss, and an optimizer:

    {
      "schema_version": 1,
      "seed": 7,
      "layers": [
        {"type": "dense", "in": 4, "out": 16, "activation": "relu"},
        {"type": "dense", "in": 16, "out": 2, "activation": "softmax"}
      ],
      "loss": {"kind": "cross_entropy"},
      "optimizer": {"kind": "adam", "learning_rate": 0.001}
    }

Validation rules: consecutive layer dims chain; softmax may appear only on
the final layer; cross_entropy requires a softmax head; learning rate is
positive.  Violations raise ValidationError with the offending field path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from rlframe.errors import ParseError, ValidationError

SCHEMA_VERSION = 1
ACTIVATIONS = ("relu", "tanh", "linear", "softmax")
LOSSES = ("mse", "cross_entropy", "a3c_composite")
OPTIMIZERS = ("sgd", "adam")


@dataclass(frozen=True)
class LayerSpec:
    in_dim: int
    out_dim: int
    activation: str


@dataclass(frozen=True)
class LossSpec:
    kind: str
    value_coef: float = 0.5
    entropy_coef: float = 0.01


@dataclass(frozen=True)
class OptimizerSpec:
    kind: str
    learning_rate: float
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8


@dataclass(frozen=True)
class NetworkConfig:
    layers: tuple[LayerSpec, ...]
    loss: LossSpec
    optimizer: OptimizerSpec
    seed: int = 0

    @property
    def input_dim(self) -> int:
        return self.layers[0].in_dim

    @property
    def output_dim(self) -> int:
        return self.layers[-1].out_dim

    @property
    def head_activation(self) -> str:
        return self.layers[-1].activation

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "seed": self.seed,
            "layers": [
                {
                    "type": "dense",
                    "in": l.in_dim,
                    "out": l.out_dim,
                    "activation": l.activation,
                }
                for l in self.layers
            ],
            "loss": {
                "kind": self.loss.kind,
                "value_coef": self.loss.value_coef,
                "entropy_coef": self.loss.entropy_coef,
            },
            "optimizer": {
                "kind": self.optimizer.kind,
                "learning_rate": self.optimizer.learning_rate,
                "beta1": self.optimizer.beta1,
                "beta2": self.optimizer.beta2,
                "epsilon": self.optimizer.epsilon,
            },
        }

    def canonical_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def _require(mapping, key, path, types):
    if key not in mapping:
        raise ValidationError(f"{path}.{key}", "missing required field")
    value = mapping[key]
    if not isinstance(value, types) or isinstance(value, bool):
        raise ValidationError(
            f"{path}.{key}", f"expected {types}, got {type(value).__name__}"
        )
    return value


def validate_config(document: dict) -> NetworkConfig:
    """Validate an already-parsed config dict; raises ValidationError."""
    if not isinstance(document, dict):
        raise ValidationError("$", "config document must be an object")
    version = document.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ValidationError(
            "schema_version", f"expected {SCHEMA_VERSION}, got {version!r}"
        )

    raw_layers = document.get("layers")
    if not isinstance(raw_layers, list) or not raw_layers:
        raise ValidationError("layers", "must be a non-empty array")
    layers = []
    for i, raw in enumerate(raw_layers):
        path = f"layers[{i}]"
        if not isinstance(raw, dict):
            raise ValidationError(path, "must be an object")
        if raw.get("type") != "dense":
            raise ValidationError(f"{path}.type", f"unknown layer type {raw.get('type')!r}")
        in_dim = _require(raw, "in", path, int)
        out_dim = _require(raw, "out", path, int)
        activation = _require(raw, "activation", path, str)
        if in_dim < 1:
            raise ValidationError(f"{path}.in", "must be >= 1")
        if out_dim < 1:
            raise ValidationError(f"{path}.out", "must be >= 1")
        if activation not in ACTIVATIONS:
            raise ValidationError(
                f"{path}.activation", f"unknown activation {activation!r}"
            )
        if layers and layers[-1].out_dim != in_dim:
            raise ValidationError(
                f"{path}.in",
                f"expected {layers[-1].out_dim} to chain from layers[{i-1}].out, got {in_dim}",
            )
        if activation == "softmax" and i != len(raw_layers) - 1:
            raise ValidationError(
                f"{path}.activation", "softmax is permitted only on the final layer"
            )
        layers.append(LayerSpec(in_dim, out_dim, activation))

    raw_loss = document.get("loss")
    if not isinstance(raw_loss, dict):
        raise ValidationError("loss", "must be an object")
    loss_kind = _require(raw_loss, "kind", "loss", str)
    if loss_kind not in LOSSES:
        raise ValidationError("loss.kind", f"unknown loss {loss_kind!r}")
    if loss_kind == "cross_entropy" and layers[-1].activation != "softmax":
        raise ValidationError("loss.kind", "cross_entropy requires a softmax head")
    loss = LossSpec(
        kind=loss_kind,
        value_coef=float(raw_loss.get("value_coef", 0.5)),
        entropy_coef=float(raw_loss.get("entropy_coef", 0.01)),
    )

    raw_opt = document.get("optimizer")
    if not isinstance(raw_opt, dict):
        raise ValidationError("optimizer", "must be an object")
    opt_kind = _require(raw_opt, "kind", "optimizer", str)
    if opt_kind not in OPTIMIZERS:
        raise ValidationError("optimizer.kind", f"unknown optimizer {opt_kind!r}")
    lr = _require(raw_opt, "learning_rate", "optimizer", (int, float))
    if not lr > 0:
        raise ValidationError("optimizer.learning_rate", "must be > 0")
    optimizer = OptimizerSpec(
        kind=opt_kind,
        learning_rate=float(lr),
        beta1=float(raw_opt.get("beta1", 0.9)),
        beta2=float(raw_opt.get("beta2", 0.999)),
        epsilon=float(raw_opt.get("epsilon", 1e-8)),
    )

    seed = document.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ValidationError("seed", "must be an integer")

    return NetworkConfig(tuple(layers), loss, optimizer, seed)


def parse_config(text: str) -> NetworkConfig:
    """Parse and validate a config document from its JSON text."""
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed config document: {exc}") from exc
    return validate_config(document)
