from rlframe.envs.base import EnvDescriptor, Environment
from rlframe.envs.cartpole import CartPole
from rlframe.envs.gridworld import GridWorld
from rlframe.envs.mountain_car import MountainCarMO
from rlframe.envs.registry import environment_names, make_env, register_environment
from rlframe.envs.tank_battle import TankBattle

__all__ = [
    "CartPole",
    "EnvDescriptor",
    "Environment",
    "GridWorld",
    "MountainCarMO",
    "TankBattle",
    "environment_names",
    "make_env",
    "register_environment",
]
