"""Environment registry: name string + flat parameter map -> instance."""

from __future__ import annotations

from rlframe.envs.base import Environment
from rlframe.envs.cartpole import CartPole
from rlframe.envs.gridworld import GridWorld
from rlframe.envs.mountain_car import MountainCarMO
from rlframe.envs.tank_battle import TankBattle
from rlframe.errors import UnknownEnvironment

_REGISTRY: dict[str, type] = {}


def register_environment(name: str, factory) -> None:
    _REGISTRY[name] = factory


def environment_names() -> list[str]:
    return sorted(_REGISTRY)


def make_env(name: str, params: dict | None = None) -> Environment:
    """Instantiate a registered environment from a flat key-value map."""
    try:
        factory = _REGISTRY[name]
    except KeyError:
        raise UnknownEnvironment(
            f"no environment named {name!r}; known: {environment_names()}"
        ) from None
    params = dict(params or {})
    # manifests use "horizon" for the step cap across all environments
    if "horizon" in params:
        params["max_steps"] = params.pop("horizon")
    return factory(**params)


register_environment("gridworld", GridWorld)
register_environment("cartpole", CartPole)
register_environment("mountaincar_mo", MountainCarMO)
register_environment("tankbattle", TankBattle)
