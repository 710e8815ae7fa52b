#!/usr/bin/env python3
"""Test plugin: serves a mirror of the 4x4 grid over the line protocol.

Standard library only, and the grid rules are restated here on purpose
rather than imported, so trajectory-equality tests exercise the protocol's
semantic fidelity instead of shared code.
"""
import json
import sys

PROTOCOL_VERSION = 1
SIZE = 4
HORIZON = 100
MOVES = {0: (0, -1), 1: (0, 1), 2: (-1, 0), 3: (1, 0)}  # up, down, left, right


def f64(value):
    return format(float(value), ".17g")


class MirrorGrid:
    def __init__(self):
        self.reset()

    def reset(self):
        self.x = 0
        self.y = 0
        self.ticks = 0
        self.terminal = False

    def step(self, action):
        dx, dy = MOVES[action]
        nx, ny = self.x + dx, self.y + dy
        if 0 <= nx < SIZE:
            self.x = nx
        if 0 <= ny < SIZE:
            self.y = ny
        self.ticks += 1
        reward = 0.0
        if self.x == SIZE - 1 and self.y == SIZE - 1:
            reward = 1.0
            self.terminal = True
        if self.ticks >= HORIZON:
            self.terminal = True
        return reward

    def state(self):
        cells = [0.0] * (SIZE * SIZE)
        cells[self.y * SIZE + self.x] = 1.0
        return cells


DESCRIPTOR = {
    "num_agents": 1,
    "num_objectives": 1,
    "action_space": [4],
    "state_dim": SIZE * SIZE,
    "fully_observable": True,
    "deterministic": True,
    "discrete_states": SIZE * SIZE,
}


def emit(obj):
    sys.stdout.write(json.dumps(obj) + "\n")
    sys.stdout.flush()


def respond(rid, method, payload):
    emit({"id": rid, "kind": "response", "method": method, "payload": payload})


def error(rid, method, code, message):
    emit({"id": rid, "kind": "error", "method": method,
          "payload": {"code": code, "message": message}})


def main():
    env = MirrorGrid()
    for line in sys.stdin:
        if not line.strip():
            continue
        try:
            frame = json.loads(line)
            rid = int(frame["id"])
            method = frame["method"]
            payload = frame.get("payload", {})
            assert frame["kind"] == "request"
        except Exception:
            error(0, "?", "E_PROTO", "malformed frame")
            continue

        if method == "handshake":
            if payload.get("protocol_version") != PROTOCOL_VERSION:
                error(rid, method, "E_VERSION", "unsupported protocol version")
                continue
            respond(rid, method, {
                "protocol_version": PROTOCOL_VERSION,
                "capabilities": ["environment"],
                "descriptor": DESCRIPTOR,
            })
        elif method == "reset":
            env.reset()
            respond(rid, method, {})
        elif method == "reseed":
            respond(rid, method, {})  # deterministic env: seed is irrelevant
        elif method == "step":
            actions = payload.get("actions")
            if (not isinstance(actions, list) or len(actions) != 1
                    or actions[0] not in (0, 1, 2, 3)):
                error(rid, method, "E_ACTION", f"bad actions {actions!r}")
                continue
            if env.terminal:
                error(rid, method, "E_STATE", "episode is terminal")
                continue
            reward = env.step(actions[0])
            respond(rid, method, {"rewards": [f64(reward)]})
        elif method == "get_state":
            respond(rid, method, {"states": [[f64(v) for v in env.state()]]})
        elif method == "is_terminal":
            respond(rid, method, {"terminal": env.terminal})
        elif method == "state_index":
            respond(rid, method, {"index": env.y * SIZE + env.x})
        else:
            error(rid, method, "E_METHOD", f"unknown method {method!r}")


if __name__ == "__main__":
    main()
