"""Shared test builders."""

from __future__ import annotations

from rlframe.net.config import validate_config


def config_doc(
    dims,
    activations,
    loss="mse",
    optimizer="sgd",
    learning_rate=0.01,
    seed=0,
    loss_params=None,
    opt_params=None,
):
    """Build a schema-version-1 config document dict.

    dims is the unit chain, e.g. (4, 16, 2); activations one per layer.
    """
    layers = [
        {"type": "dense", "in": dims[i], "out": dims[i + 1], "activation": act}
        for i, act in enumerate(activations)
    ]
    doc = {
        "schema_version": 1,
        "seed": seed,
        "layers": layers,
        "loss": {"kind": loss, **(loss_params or {})},
        "optimizer": {
            "kind": optimizer,
            "learning_rate": learning_rate,
            **(opt_params or {}),
        },
    }
    return doc


def make_config(*args, **kwargs):
    return validate_config(config_doc(*args, **kwargs))
