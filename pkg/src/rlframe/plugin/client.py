"""Plugin client: spawn a child process and speak the line protocol.

One session owns one child.  Requests are synchronous with a per-request
timeout; unsolicited "notify" frames arriving while a response is pending
are handed to the session's notification callback.  A dead or silent peer
surfaces as Timeout on the next call.
"""

from __future__ import annotations

import logging
import queue
import subprocess
import threading
import time

import numpy as np

from rlframe.envs.base import EnvDescriptor
from rlframe.errors import (
    HandshakeFailed,
    ProtocolError,
    RemoteError,
    Timeout,
    UnknownRemoteAlgorithm,
)
from rlframe.learn.types import EpisodeRecord, EvaluationReport, TrainingReport
from rlframe.net.config import NetworkConfig, parse_config
from rlframe.plugin import framing
from rlframe.seeding import derive_seed

_EOF = object()


class PluginSession:
    def __init__(self, command, timeout_ms: int = 5000, seed: int = 0,
                 on_notify=None):
        self.command = list(command)
        self.timeout_ms = timeout_ms
        self.seed = int(seed)
        self.on_notify = on_notify
        self._next_id = 1
        self._lines: queue.Queue = queue.Queue()
        try:
            self._proc = subprocess.Popen(
                self.command,
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                stderr=subprocess.DEVNULL,
                text=True,
                bufsize=1,
            )
        except OSError as exc:
            raise HandshakeFailed(f"cannot launch plugin {self.command}: {exc}") from exc
        self._reader = threading.Thread(target=self._pump, daemon=True)
        self._reader.start()
        self.handshake = self._do_handshake()

    # --- transport ---------------------------------------------------------

    def _pump(self):
        try:
            for line in self._proc.stdout:
                self._lines.put(line)
        finally:
            self._lines.put(_EOF)

    def _send(self, id: int, method: str, payload: dict):
        try:
            self._proc.stdin.write(framing.encode_frame(id, "request", method, payload))
            self._proc.stdin.flush()
        except (OSError, ValueError) as exc:
            raise Timeout(f"plugin pipe closed while sending {method}: {exc}") from exc

    def request(self, method: str, payload: dict | None = None,
                timeout_ms: int | None = None) -> dict:
        req_id = self._next_id
        self._next_id += 1
        self._send(req_id, method, payload or {})
        deadline = time.monotonic() + (timeout_ms or self.timeout_ms) / 1000.0

        while True:
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                raise Timeout(f"plugin did not answer {method!r} in time")
            try:
                line = self._lines.get(timeout=remaining)
            except queue.Empty:
                raise Timeout(f"plugin did not answer {method!r} in time") from None
            if line is _EOF:
                raise Timeout(f"plugin exited before answering {method!r}")

            frame = framing.decode_frame(line)
            if frame["kind"] == "notify":
                if self.on_notify is not None:
                    self.on_notify(frame)
                continue
            if frame["id"] != req_id:
                raise ProtocolError(
                    f"response id {frame['id']} does not match request {req_id}"
                )
            if frame["kind"] == "error":
                code = frame["payload"].get("code", framing.E_INTERNAL)
                message = frame["payload"].get("message", "")
                if code == framing.E_UNKNOWN_ALGO:
                    raise UnknownRemoteAlgorithm(message)
                raise RemoteError(code, message)
            if frame["kind"] != "response":
                raise ProtocolError(f"unexpected frame kind {frame['kind']!r}")
            return frame["payload"]

    def _do_handshake(self) -> dict:
        try:
            payload = self.request(
                "handshake",
                {"protocol_version": framing.PROTOCOL_VERSION, "seed": self.seed},
            )
        except (RemoteError, ProtocolError, Timeout) as exc:
            self.close()
            raise HandshakeFailed(f"handshake rejected: {exc}") from exc
        version = payload.get("protocol_version")
        if version != framing.PROTOCOL_VERSION:
            self.close()
            raise HandshakeFailed(
                f"plugin speaks protocol {version!r}, need {framing.PROTOCOL_VERSION}"
            )
        capabilities = payload.get("capabilities")
        if not isinstance(capabilities, list) or not capabilities:
            self.close()
            raise HandshakeFailed("plugin advertised no capabilities")
        return payload

    @property
    def capabilities(self) -> list[str]:
        return list(self.handshake["capabilities"])

    def close(self):
        proc = getattr(self, "_proc", None)
        if proc is None:
            return
        try:
            if proc.stdin:
                proc.stdin.close()
            proc.wait(timeout=1.0)
        except (OSError, subprocess.TimeoutExpired):
            proc.kill()
            proc.wait(timeout=1.0)

    def __del__(self):
        try:
            self.close()
        except Exception:
            pass


def _decode_state_rows(rows) -> list:
    return [
        np.array([framing.decode_f64(v) for v in row], dtype=np.float64)
        for row in rows
    ]


class RemoteEnvironment:
    """Environment adapter satisfying the envcore contract over a session.

    The descriptor is taken from the handshake and cached; every other call
    is one request/response pair.  clone() spawns a fresh child process
    with a derived seed, starting at its initial episode state.
    """

    supports_human_play = False

    def __init__(self, command, seed: int = 0, timeout_ms: int = 5000):
        self._command = list(command)
        self._seed = int(seed)
        self._timeout_ms = timeout_ms
        self._clones = 0
        self._session = PluginSession(command, timeout_ms, seed=self._seed)
        if "environment" not in self._session.capabilities:
            self._session.close()
            raise HandshakeFailed("plugin does not serve an environment")
        raw = self._session.handshake.get("descriptor")
        if not isinstance(raw, dict):
            raise HandshakeFailed("environment plugin sent no descriptor")
        try:
            self.descriptor = EnvDescriptor(
                num_agents=int(raw["num_agents"]),
                num_objectives=int(raw["num_objectives"]),
                action_space=tuple(int(a) for a in raw["action_space"]),
                state_dim=int(raw["state_dim"]),
                fully_observable=bool(raw["fully_observable"]),
                deterministic=bool(raw["deterministic"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise HandshakeFailed(f"bad descriptor from plugin: {exc}") from exc
        self._discrete_states = raw.get("discrete_states")

    @property
    def seed(self) -> int:
        return self._seed

    def clone(self) -> "RemoteEnvironment":
        self._clones += 1
        return RemoteEnvironment(
            self._command,
            seed=derive_seed(self._seed, self._clones),
            timeout_ms=self._timeout_ms,
        )

    def reseed(self, seed: int) -> None:
        self._seed = int(seed)
        self._session.request("reseed", {"seed": self._seed})

    def reset(self) -> None:
        self._session.request("reset", {})

    def step(self, actions):
        payload = self._session.request("step", {"actions": [int(a) for a in actions]})
        rewards = payload.get("rewards")
        if not isinstance(rewards, list):
            raise ProtocolError("step response missing rewards")
        return np.array([framing.decode_f64(r) for r in rewards], dtype=np.float64)

    def get_state(self):
        payload = self._session.request("get_state", {})
        rows = payload.get("states")
        if not isinstance(rows, list):
            raise ProtocolError("get_state response missing states")
        return _decode_state_rows(rows)

    def is_terminal(self) -> bool:
        return bool(self._session.request("is_terminal", {}).get("terminal"))

    def get_number_of_objectives(self) -> int:
        return self.descriptor.num_objectives

    def get_number_of_agents(self) -> int:
        return self.descriptor.num_agents

    def discrete_state_count(self):
        return self._discrete_states

    def discrete_state_index(self):
        if self._discrete_states is None:
            return None
        return int(self._session.request("state_index", {}).get("index"))

    def external_agent_indices(self) -> frozenset:
        return frozenset()

    def render_payload(self):
        return None

    def close(self):
        self._session.close()


class RemoteLearner:
    """Learner adapter: train/evaluate run inside the plugin process.

    Progress notifications are logged as they stream in; the final response
    carries the per-episode report.
    """

    def __init__(self, command, param_dict: dict, timeout_ms: int = 5000,
                 run_timeout_ms: int = 600_000):
        self._log = logging.getLogger("rlframe.plugin")
        self.param_dict = dict(param_dict)
        self.progress_events: list[dict] = []
        self._run_timeout_ms = run_timeout_ms
        self._session = PluginSession(
            command, timeout_ms, seed=int(param_dict.get("seed", 0)),
            on_notify=self._on_notify,
        )
        if "learner" not in self._session.capabilities:
            self._session.close()
            raise HandshakeFailed("plugin does not serve a learner")
        algorithms = self._session.handshake.get("algorithms", [])
        wanted = self.param_dict.get("algorithm")
        if wanted is not None and wanted not in algorithms:
            self._session.close()
            raise UnknownRemoteAlgorithm(
                f"plugin serves {algorithms}, not {wanted!r}"
            )

    def _on_notify(self, frame):
        if frame["method"] == "progress":
            self.progress_events.append(frame["payload"])
            self._log.info("plugin progress: %s", frame["payload"])

    def _report_payload(self, payload) -> tuple[list[list[float]], list[int]]:
        unknown = set(payload) - {"episodes", "total_steps"}
        if unknown:
            self._log.info("dropping unsupported report fields: %s", sorted(unknown))
        episodes = payload.get("episodes", [])
        returns = [
            [framing.decode_f64(v) for v in ep.get("returns", [])] for ep in episodes
        ]
        steps = [int(ep.get("steps", 0)) for ep in episodes]
        return returns, steps

    def train(self) -> TrainingReport:
        payload = self._session.request(
            "train", self.param_dict, timeout_ms=self._run_timeout_ms
        )
        returns, steps = self._report_payload(payload)
        report = TrainingReport()
        for i, (r, s) in enumerate(zip(returns, steps), start=1):
            report.episodes.append(EpisodeRecord(0, i, s, r, None))
        report.thread_episode_counts = {0: len(returns)} if returns else {}
        report.total_steps = int(payload.get("total_steps", sum(steps)))
        return report

    def evaluate(self, episodes=None, checkpoint=None) -> EvaluationReport:
        params = dict(self.param_dict)
        if episodes is not None:
            params["episodes"] = int(episodes)
        payload = self._session.request(
            "evaluate", params, timeout_ms=self._run_timeout_ms
        )
        returns, steps = self._report_payload(payload)
        return EvaluationReport(returns, steps)

    def close(self):
        self._session.close()


class Plugin:
    """Handle to one plugin executable; spawns a session per extraction."""

    def __init__(self, command, timeout_ms: int = 5000):
        self.command = list(command)
        self.timeout_ms = timeout_ms

    def convert_environment(self, seed: int = 0) -> RemoteEnvironment:
        return RemoteEnvironment(self.command, seed=seed, timeout_ms=self.timeout_ms)

    def extract_learner(self, param_dict: dict) -> RemoteLearner:
        return RemoteLearner(self.command, param_dict, timeout_ms=self.timeout_ms)

    def extract_configuration(self, param_dict: dict | None = None) -> NetworkConfig:
        session = PluginSession(self.command, self.timeout_ms)
        try:
            if "configuration" not in session.capabilities:
                raise HandshakeFailed("plugin does not serve configurations")
            payload = session.request("get_config", param_dict or {})
            document = payload.get("document")
            if not isinstance(document, str):
                raise ProtocolError("get_config response missing document text")
            return parse_config(document)
        finally:
            session.close()
