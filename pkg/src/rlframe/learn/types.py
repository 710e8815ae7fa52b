"""Learner-side data types: transitions, specs, and reports."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from rlframe.errors import SpecValidationError


@dataclass
class Transition:
    """One step of experience: {s_t, a_t, r_{t+1}, s_{t+1}} plus terminal."""

    states: list
    actions: list
    rewards: np.ndarray
    next_states: list
    terminal: bool


@dataclass
class LearnerSpec:
    """Tuning knobs consumed by the factory when building a learner."""

    algorithm: str
    gamma: float = 0.99
    learning_rate: float = 0.1
    epsilon_start: float = 1.0
    epsilon_end: float = 0.05
    epsilon_decay_steps: int = 10_000
    n_step: int | None = None
    threads: int = 1
    weights: list[float] | None = None
    reward_clip: float | None = None
    replay_capacity: int = 0
    batch_size: int = 0
    seed: int = 0

    def validate(self):
        if not 0.0 < self.gamma <= 1.0:
            raise SpecValidationError(f"gamma must be in (0, 1], got {self.gamma}")
        for name in ("epsilon_start", "epsilon_end"):
            eps = getattr(self, name)
            if not 0.0 <= eps <= 1.0:
                raise SpecValidationError(f"{name} must be in [0, 1], got {eps}")
        if self.epsilon_decay_steps < 1:
            raise SpecValidationError("epsilon_decay_steps must be >= 1")
        if self.threads < 1:
            raise SpecValidationError("threads must be >= 1")
        if self.weights is not None:
            w = np.asarray(self.weights, dtype=np.float64)
            if np.any(w < 0) or w.sum() <= 0:
                raise SpecValidationError(
                    "objective weights must be nonnegative with positive sum"
                )
        if self.reward_clip is not None and self.reward_clip <= 0:
            raise SpecValidationError("reward_clip must be positive when set")
        if self.replay_capacity < 0 or self.batch_size < 0:
            raise SpecValidationError("replay capacity and batch size must be >= 0")
        if self.n_step is not None and self.n_step < 1:
            raise SpecValidationError("n_step must be >= 1")
        return self

    def epsilon_at(self, step: int) -> float:
        """Linear decay from epsilon_start to epsilon_end, then constant."""
        frac = min(1.0, step / self.epsilon_decay_steps)
        return self.epsilon_start + (self.epsilon_end - self.epsilon_start) * frac


@dataclass
class MonitorSpec:
    """Supervision knobs: budget, cadence, reporting, checkpoints.

    One epoch is steps_per_epoch environment steps; training stops after
    epochs * steps_per_epoch steps, or earlier when max_episodes completed
    episodes have been recorded.
    """

    epochs: int = 1
    steps_per_epoch: int = 1000
    max_episodes: int | None = None
    training_interval: int = 1
    report_frequency: int = 100
    eval_episodes: int = 100
    checkpoint_dir: str | None = None
    checkpoint_interval: int = 0
    batch_size: int = 0

    def validate(self):
        if self.epochs < 1:
            raise SpecValidationError("epochs must be >= 1")
        if self.steps_per_epoch < 0:
            raise SpecValidationError("steps_per_epoch must be >= 0")
        if self.training_interval < 1:
            raise SpecValidationError("training_interval must be >= 1")
        if self.report_frequency < 1:
            raise SpecValidationError("report_frequency must be >= 1")
        if self.eval_episodes < 1:
            raise SpecValidationError("eval_episodes must be >= 1")
        if self.max_episodes is not None and self.max_episodes < 0:
            raise SpecValidationError("max_episodes must be >= 0")
        return self

    @property
    def step_budget(self) -> int:
        return self.epochs * self.steps_per_epoch


@dataclass
class EpisodeRecord:
    thread_id: int
    episode: int
    steps: int
    returns: list[float]
    loss: float | None


@dataclass
class TrainingReport:
    episodes: list[EpisodeRecord] = field(default_factory=list)
    total_steps: int = 0
    train_calls: int = 0
    thread_episode_counts: dict[int, int] = field(default_factory=dict)
    checkpoints: list[str] = field(default_factory=list)
    wall_seconds: float = 0.0

    @property
    def total_episodes(self) -> int:
        return len(self.episodes)

    @property
    def steps_per_second(self) -> float:
        return self.total_steps / self.wall_seconds if self.wall_seconds > 0 else 0.0

    def deterministic_summary(self) -> dict:
        """Everything except wall-clock timing; used for bit-equality checks."""
        return {
            "episodes": [
                {
                    "thread": r.thread_id,
                    "episode": r.episode,
                    "steps": r.steps,
                    "returns": r.returns,
                    "loss": r.loss,
                }
                for r in self.episodes
            ],
            "total_steps": self.total_steps,
            "train_calls": self.train_calls,
            "thread_episode_counts": dict(sorted(self.thread_episode_counts.items())),
        }

    def summary(self) -> dict:
        out = self.deterministic_summary()
        returns = np.array([r.returns for r in self.episodes], dtype=np.float64)
        out["mean_return"] = returns.mean(axis=0).tolist() if len(returns) else []
        out["wall_seconds"] = self.wall_seconds
        out["steps_per_second"] = self.steps_per_second
        out["checkpoints"] = list(self.checkpoints)
        return out


@dataclass
class EvaluationReport:
    returns: list[list[float]]
    steps: list[int]

    def mean(self) -> list[float]:
        return np.asarray(self.returns, dtype=np.float64).mean(axis=0).tolist()

    def std(self) -> list[float]:
        return np.asarray(self.returns, dtype=np.float64).std(axis=0).tolist()

    def summary(self) -> dict:
        return {
            "episodes": len(self.returns),
            "returns": self.returns,
            "steps": self.steps,
            "mean_return": self.mean(),
            "std_return": self.std(),
        }
