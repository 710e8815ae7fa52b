"""Run manifests: one JSON file describing a complete run.

A manifest names the environment (native or plugin-provided), exactly one
of a native algorithm or a plugin learner, the learner and monitor specs,
network config files for neural algorithms, optional human-play settings,
and the output directory.

    {
      "seed": 7,
      "env": {"name": "gridworld", "params": {"seed": 7}},
      "algorithm": "q_learning",
      "learner": {"gamma": 0.9, "learning_rate": 0.1},
      "monitor": {"epochs": 1, "steps_per_epoch": 100000},
      "network": ["configs/actor.json", "configs/critic.json"],
      "human": {"agent_index": 0, "default_action": 5, "port": 8765},
      "out": "runs/demo"
    }
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field

from rlframe.errors import RLFrameError
from rlframe.learn.types import LearnerSpec, MonitorSpec
from rlframe.seeding import derive_seed

NEURAL_ALGORITHMS = ("a3c",)


class ManifestError(RLFrameError):
    def __init__(self, field_path: str, message: str):
        super().__init__(f"{field_path}: {message}")
        self.field = field_path


@dataclass
class PluginRef:
    name: str
    role: str  # "environment" | "learner"
    params: dict = field(default_factory=dict)


@dataclass
class HumanSettings:
    agent_index: int = 0
    default_action: int = 5
    port: int = 8765
    tick_rate: float = 10.0


@dataclass
class RunManifest:
    env_name: str | None
    env_params: dict
    algorithm: str | None
    learner: LearnerSpec | None
    monitor: MonitorSpec
    network: list[str]
    plugin: PluginRef | None
    human: HumanSettings | None
    out: str | None
    seed: int | None

    # --- validation -----------------------------------------------------------

    def validate(self) -> "RunManifest":
        plugin_learner = self.plugin is not None and self.plugin.role == "learner"
        if plugin_learner and self.algorithm is not None:
            raise ManifestError(
                "algorithm", "a manifest names either a native algorithm or a "
                "plugin learner, not both"
            )
        if not plugin_learner and self.algorithm is None:
            raise ManifestError("algorithm", "no native algorithm or plugin learner")
        if self.plugin is not None and self.plugin.role not in ("environment", "learner"):
            raise ManifestError("plugin.role", f"unknown role {self.plugin.role!r}")
        if self.env_name is None and not (
            self.plugin is not None and self.plugin.role in ("environment", "learner")
        ):
            raise ManifestError("env.name", "missing environment")

        neural = self.algorithm in NEURAL_ALGORITHMS
        if neural and not self.network:
            raise ManifestError("network", f"{self.algorithm} requires network configs")
        if not neural and self.network:
            raise ManifestError(
                "network", "network configs are only valid for neural algorithms"
            )
        return self

    # --- (de)serialization --------------------------------------------------------

    @classmethod
    def from_dict(cls, doc: dict) -> "RunManifest":
        if not isinstance(doc, dict):
            raise ManifestError("$", "manifest must be a JSON object")

        env = doc.get("env") or {}
        if env and not isinstance(env, dict):
            raise ManifestError("env", "must be an object")

        seed = doc.get("seed")
        if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool)):
            raise ManifestError("seed", "must be an integer")

        algorithm = doc.get("algorithm")
        learner_doc = dict(doc.get("learner") or {})
        monitor_doc = dict(doc.get("monitor") or {})
        for key, target in (("learner", learner_doc), ("monitor", monitor_doc)):
            if not isinstance(doc.get(key, {}), dict) and doc.get(key) is not None:
                raise ManifestError(key, "must be an object")

        learner = None
        if algorithm is not None:
            try:
                learner = LearnerSpec(algorithm=algorithm, **learner_doc)
            except TypeError as exc:
                raise ManifestError("learner", f"unknown field: {exc}") from None
        try:
            monitor = MonitorSpec(**monitor_doc)
        except TypeError as exc:
            raise ManifestError("monitor", f"unknown field: {exc}") from None

        network = doc.get("network") or []
        if isinstance(network, str):
            network = [network]
        if not isinstance(network, list) or not all(isinstance(p, str) for p in network):
            raise ManifestError("network", "must be a path or list of paths")

        plugin = None
        if doc.get("plugin") is not None:
            p = doc["plugin"]
            if not isinstance(p, dict) or "name" not in p or "role" not in p:
                raise ManifestError("plugin", "needs name and role")
            plugin = PluginRef(p["name"], p["role"], dict(p.get("params") or {}))

        human = None
        if doc.get("human") is not None:
            h = doc["human"]
            if not isinstance(h, dict):
                raise ManifestError("human", "must be an object")
            try:
                human = HumanSettings(**h)
            except TypeError as exc:
                raise ManifestError("human", f"unknown field: {exc}") from None

        return cls(
            env_name=env.get("name"),
            env_params=dict(env.get("params") or {}),
            algorithm=algorithm,
            learner=learner,
            monitor=monitor,
            network=network,
            plugin=plugin,
            human=human,
            out=doc.get("out"),
            seed=seed,
        ).validate()

    def to_dict(self) -> dict:
        doc: dict = {}
        if self.seed is not None:
            doc["seed"] = self.seed
        if self.env_name is not None:
            doc["env"] = {"name": self.env_name, "params": dict(self.env_params)}
        if self.algorithm is not None:
            doc["algorithm"] = self.algorithm
            learner = dataclasses.asdict(self.learner)
            learner.pop("algorithm")
            doc["learner"] = learner
        doc["monitor"] = dataclasses.asdict(self.monitor)
        if self.network:
            doc["network"] = list(self.network)
        if self.plugin is not None:
            doc["plugin"] = {
                "name": self.plugin.name,
                "role": self.plugin.role,
                "params": dict(self.plugin.params),
            }
        if self.human is not None:
            doc["human"] = dataclasses.asdict(self.human)
        if self.out is not None:
            doc["out"] = self.out
        return doc

    # --- seeding -------------------------------------------------------------------

    def apply_seed_override(self, seed: int | None) -> None:
        """CLI --seed: replaces the manifest seed before derivation."""
        if seed is not None:
            self.seed = seed

    def resolve_seeds(self) -> None:
        """Fill unset env/learner seeds from the global manifest seed."""
        if self.seed is None:
            return
        self.env_params.setdefault("seed", derive_seed(self.seed, 0))
        if self.learner is not None:
            self.learner.seed = (
                self.learner.seed or derive_seed(self.seed, 1)
            )
        if self.plugin is not None:
            self.plugin.params.setdefault("seed", derive_seed(self.seed, 2))


def load_manifest(path: str) -> RunManifest:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except FileNotFoundError:
        raise ManifestError("$", f"manifest file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ManifestError("$", f"malformed JSON: {exc}") from None
    return RunManifest.from_dict(doc)
