"""Live play session: episode loop plus a websocket fan-out.

Every environment tick the loop resolves human slots, steps the env, and
pushes one "frame" notification to every connected client; episode ends
push one "summary".  Frames reuse the plugin wire framing (notify frames,
floats as 17-digit decimal strings).  Clients send {"slot", "action"}
notify frames, which are stamped with the current tick and routed to the
slot mailboxes.

The tick loop never blocks on clients: each client has a bounded outbox
drained by its own sender thread, and frames overflowing a slow consumer
are dropped oldest-first.  When a client disconnects its slots fall back
to their default actions.
"""

from __future__ import annotations

import collections
import logging
import threading
import time
from dataclasses import dataclass

import numpy as np

from rlframe.errors import PortInUse
from rlframe.human.wrapper import HumanPlayEnv
from rlframe.plugin import framing

logger = logging.getLogger("rlframe.human")


@dataclass
class SessionConfig:
    host: str = "127.0.0.1"
    port: int = 8765
    ticks_per_second: float = 10.0  # 0 disables throttling
    episodes: int | None = None     # None: run until stop()
    min_clients: int = 0            # wait for this many clients before playing
    client_buffer: int = 256        # outbox frames per client before dropping


class _Client:
    def __init__(self, connection, buffer: int):
        self.connection = connection
        self.outbox: collections.deque = collections.deque(maxlen=buffer)
        self.wakeup = threading.Event()
        self.closed = False

    def offer(self, text: str):
        self.outbox.append(text)  # deque drops oldest when full
        self.wakeup.set()

    def sender_loop(self):
        while True:
            self.wakeup.wait(timeout=0.5)
            self.wakeup.clear()
            while self.outbox:
                text = self.outbox.popleft()
                try:
                    self.connection.send(text)
                except Exception:
                    self.closed = True
                    return
            if self.closed:
                return


class PlaySession:
    """Serves one environment to websocket clients while a policy drives
    the non-human agents."""

    def __init__(self, env: HumanPlayEnv, policy, config: SessionConfig | None = None):
        self.env = env
        self.policy = policy
        self.config = config or SessionConfig()
        self._clients: set[_Client] = set()
        self._clients_lock = threading.Lock()
        self._stop = threading.Event()
        self._server = None
        self._threads: list[threading.Thread] = []
        self.episodes_played = 0
        self.final_scores: list[list[float]] = []

    # --- lifecycle -----------------------------------------------------------

    def start(self):
        from websockets.sync.server import serve

        try:
            self._server = serve(self._handle_client, self.config.host, self.config.port)
        except OSError as exc:
            raise PortInUse(
                f"cannot bind {self.config.host}:{self.config.port}: {exc}"
            ) from exc
        self._port = self._server.socket.getsockname()[1]
        server_thread = threading.Thread(target=self._server.serve_forever, daemon=True)
        loop_thread = threading.Thread(target=self._episode_loop, daemon=True)
        self._threads = [server_thread, loop_thread]
        for t in self._threads:
            t.start()
        return self

    @property
    def port(self) -> int:
        return self._port

    def stop(self):
        self._stop.set()
        if self._server is not None:
            self._server.shutdown()

    def wait(self, timeout=None) -> bool:
        self._threads[1].join(timeout)
        return not self._threads[1].is_alive()

    # --- client handling ----------------------------------------------------------

    def _handle_client(self, connection):
        from rlframe.errors import ProtocolError

        client = _Client(connection, self.config.client_buffer)
        sender = threading.Thread(target=client.sender_loop, daemon=True)
        sender.start()
        with self._clients_lock:
            self._clients.add(client)
        logger.info("client connected (%d total)", len(self._clients))
        touched: set[int] = set()
        try:
            for message in connection:
                try:
                    frame = framing.decode_frame(message)
                except ProtocolError as exc:
                    logger.warning("dropping malformed client frame: %s", exc)
                    continue
                if frame["kind"] != "notify" or frame["method"] != "action":
                    continue
                slot_index = frame["payload"].get("slot")
                action = frame["payload"].get("action")
                slot = self.env.slots.get(slot_index)
                if slot is None or not isinstance(action, int):
                    continue
                slot.submit(action, self.env.steps)
                touched.add(slot_index)
        except Exception:
            pass
        finally:
            client.closed = True
            client.wakeup.set()
            with self._clients_lock:
                self._clients.discard(client)
            for slot_index in touched:
                self.env.slots[slot_index].clear()
            logger.info("client disconnected (%d total)", len(self._clients))

    # --- episode loop ----------------------------------------------------------------

    def _broadcast(self, method: str, payload: dict):
        text = framing.encode_frame(0, "notify", method, payload)
        with self._clients_lock:
            clients = list(self._clients)
        for client in clients:
            client.offer(text)

    def _client_count(self) -> int:
        with self._clients_lock:
            return len(self._clients)

    def _episode_loop(self):
        config = self.config
        while not self._stop.is_set() and config.min_clients > self._client_count():
            time.sleep(0.02)

        interval = 1.0 / config.ticks_per_second if config.ticks_per_second > 0 else 0.0
        while not self._stop.is_set():
            if config.episodes is not None and self.episodes_played >= config.episodes:
                break
            self.env.reset()
            scores = np.zeros(self.env.get_number_of_objectives())
            while not self.env.is_terminal() and not self._stop.is_set():
                tick_started = time.monotonic()
                states = self.env.get_state()
                actions = self.policy(states, self.env)
                rewards = self.env.step(actions)
                scores += rewards
                self._broadcast("frame", {
                    "tick": self.env.steps,
                    "grid": self.env.render_payload(),
                    "scores": [float(s) for s in scores],
                    "terminal": bool(self.env.is_terminal()),
                })
                if interval > 0:
                    remaining = interval - (time.monotonic() - tick_started)
                    if remaining > 0:
                        time.sleep(remaining)
            self.episodes_played += 1
            self.final_scores.append([float(s) for s in scores])
            self._broadcast("summary", {
                "tick": self.env.steps,
                "scores": [float(s) for s in scores],
                "episode": self.episodes_played,
            })
        self.stop()


def serve_session(env: HumanPlayEnv, policy, config: SessionConfig | None = None) -> PlaySession:
    """Start serving; returns the running session handle."""
    return PlaySession(env, policy, config).start()
