from rlframe.learn.actor_critic import A3CLearner
from rlframe.learn.base import Learner
from rlframe.learn.factory import ALGORITHMS, LearnerHandle, create_learner, register_algorithm
from rlframe.learn.monitor import Monitor
from rlframe.learn.replay import ReplayBuffer
from rlframe.learn.returns import discounted_return, nstep_return, scalarize
from rlframe.learn.tabular import (
    MonteCarloLearner,
    MOQLearningLearner,
    QLearningLearner,
    QTable,
    mc_update,
    q_update,
)
from rlframe.learn.types import (
    EpisodeRecord,
    EvaluationReport,
    LearnerSpec,
    MonitorSpec,
    TrainingReport,
    Transition,
)

__all__ = [
    "A3CLearner",
    "ALGORITHMS",
    "EpisodeRecord",
    "EvaluationReport",
    "Learner",
    "LearnerHandle",
    "LearnerSpec",
    "Monitor",
    "MonitorSpec",
    "MonteCarloLearner",
    "MOQLearningLearner",
    "QLearningLearner",
    "QTable",
    "ReplayBuffer",
    "TrainingReport",
    "Transition",
    "create_learner",
    "discounted_return",
    "mc_update",
    "nstep_return",
    "q_update",
    "register_algorithm",
    "scalarize",
]
