"""Modular reinforcement-learning framework.

Four cooperating parts: environments (rlframe.envs), declarative policy
networks with manual backprop (rlframe.net), learners with a monitor and
factory (rlframe.learn), and cross-process plugins (rlframe.plugin), plus
live human play (rlframe.human) and a CLI (rlframe.cli).
"""

from rlframe.envs import make_env
from rlframe.learn import LearnerSpec, MonitorSpec, create_learner
from rlframe.net import create_network, parse_config

__version__ = "0.1.0"

__all__ = [
    "LearnerSpec",
    "MonitorSpec",
    "create_learner",
    "create_network",
    "make_env",
    "parse_config",
]
