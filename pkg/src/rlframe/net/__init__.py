from rlframe.net.config import (
    LayerSpec,
    LossSpec,
    NetworkConfig,
    OptimizerSpec,
    parse_config,
    validate_config,
)
from rlframe.net.policy import PolicyNetwork, create_network

__all__ = [
    "LayerSpec",
    "LossSpec",
    "NetworkConfig",
    "OptimizerSpec",
    "PolicyNetwork",
    "create_network",
    "parse_config",
    "validate_config",
]
