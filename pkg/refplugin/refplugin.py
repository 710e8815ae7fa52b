#!/usr/bin/env python3
"""Reference plugin: a foreign-ecosystem process behind the wire protocol.

Serves three capabilities over newline-delimited JSON frames on stdio:

  environment    a 4x4 grid with the same rules as the framework's native
                 one, deliberately reimplemented here (transition table,
                 no shared code) so trajectory-equality tests validate the
                 protocol's semantic fidelity
  learner        a seeded random-policy learner: train/evaluate run
                 episodes on an internal environment and stream progress
                 notifications
  configuration  a sample cart-pole actor network config document

Standard library only.  Floats travel as 17-significant-digit decimal
strings.  Malformed frames get an error frame and the session continues;
EOF exits cleanly.
"""
import json
import random
import sys

PROTOCOL_VERSION = 1

# --- grid rules -------------------------------------------------------------
# Cells are indexed row-major on a 4x4 board; the goal is cell 15.  Actions:
# 0 up, 1 down, 2 left, 3 right; off-board moves keep the cell.  Reward 1.0
# on entering the goal, else 0.0; episodes cap at 100 steps.

SIZE = 4
GOAL = 15
HORIZON = 100


def _build_transitions():
    table = {}
    for cell in range(SIZE * SIZE):
        row, col = divmod(cell, SIZE)
        moves = {
            0: (max(row - 1, 0), col),
            1: (min(row + 1, SIZE - 1), col),
            2: (row, max(col - 1, 0)),
            3: (row, min(col + 1, SIZE - 1)),
        }
        for action, (r, c) in moves.items():
            nxt = r * SIZE + c
            table[(cell, action)] = (nxt, 1.0 if nxt == GOAL else 0.0, nxt == GOAL)
    return table

TRANSITIONS = _build_transitions()

DESCRIPTOR = {
    "num_agents": 1,
    "num_objectives": 1,
    "action_space": [4],
    "state_dim": SIZE * SIZE,
    "fully_observable": True,
    "deterministic": True,
    "discrete_states": SIZE * SIZE,
}

SAMPLE_CONFIG = json.dumps({
    "schema_version": 1,
    "seed": 7,
    "layers": [
        {"type": "dense", "in": 4, "out": 16, "activation": "relu"},
        {"type": "dense", "in": 16, "out": 2, "activation": "softmax"},
    ],
    "loss": {"kind": "cross_entropy"},
    "optimizer": {"kind": "adam", "learning_rate": 0.001},
}, indent=2)


def f64(value):
    return format(float(value), ".17g")


class GridEnv:
    def __init__(self):
        self.reset()

    def reset(self):
        self.cell = 0
        self.ticks = 0
        self.terminal = False

    def step(self, action):
        self.cell, reward, done = TRANSITIONS[(self.cell, action)]
        self.ticks += 1
        self.terminal = done or self.ticks >= HORIZON
        return reward

    def state(self):
        cells = [0.0] * (SIZE * SIZE)
        cells[self.cell] = 1.0
        return cells


INTERNAL_ENVS = {"gridworld": GridEnv}
ALGORITHMS = ["random"]


def emit(obj):
    sys.stdout.write(json.dumps(obj) + "\n")
    sys.stdout.flush()


def respond(rid, method, payload):
    emit({"id": rid, "kind": "response", "method": method, "payload": payload})


def notify(method, payload):
    emit({"id": 0, "kind": "notify", "method": method, "payload": payload})


def error(rid, method, code, message):
    emit({"id": rid, "kind": "error", "method": method,
          "payload": {"code": code, "message": message}})


def run_random_policy(params, progress_every=25):
    """Seeded random episodes on an internal env; returns the report."""
    env_cls = INTERNAL_ENVS[params.get("env", "gridworld")]
    episodes = int(params.get("episodes", 100))
    rng = random.Random(int(params.get("seed", 0)))
    env = env_cls()
    report = []
    total_steps = 0
    for index in range(1, episodes + 1):
        env.reset()
        episode_return = 0.0
        steps = 0
        while not env.terminal:
            episode_return += env.step(rng.randrange(4))
            steps += 1
        total_steps += steps
        report.append({"steps": steps, "returns": [f64(episode_return)]})
        if index % progress_every == 0:
            notify("progress", {"episode": index, "returns": [f64(episode_return)]})
    return {"episodes": report, "total_steps": total_steps}


class Session:
    def __init__(self):
        self.env = GridEnv()

    def handle(self, rid, method, payload):
        if method == "handshake":
            if payload.get("protocol_version") != PROTOCOL_VERSION:
                error(rid, method, "E_VERSION", "unsupported protocol version")
                return
            respond(rid, method, {
                "protocol_version": PROTOCOL_VERSION,
                "capabilities": ["environment", "learner", "configuration"],
                "descriptor": DESCRIPTOR,
                "algorithms": ALGORITHMS,
            })
        elif method == "reset":
            self.env.reset()
            respond(rid, method, {})
        elif method == "reseed":
            respond(rid, method, {})  # grid is deterministic; seed echoed by contract
        elif method == "step":
            actions = payload.get("actions")
            if (not isinstance(actions, list) or len(actions) != 1
                    or not isinstance(actions[0], int)
                    or not 0 <= actions[0] < 4):
                error(rid, method, "E_ACTION", f"bad actions {actions!r}")
                return
            if self.env.terminal:
                error(rid, method, "E_STATE", "episode is terminal")
                return
            reward = self.env.step(actions[0])
            respond(rid, method, {"rewards": [f64(reward)]})
        elif method == "get_state":
            respond(rid, method, {"states": [[f64(v) for v in self.env.state()]]})
        elif method == "is_terminal":
            respond(rid, method, {"terminal": self.env.terminal})
        elif method == "state_index":
            respond(rid, method, {"index": self.env.cell})
        elif method in ("train", "evaluate"):
            algorithm = payload.get("algorithm", "random")
            if algorithm not in ALGORITHMS:
                error(rid, method, "E_UNKNOWN_ALGO",
                      f"algorithms served: {ALGORITHMS}")
                return
            if payload.get("env", "gridworld") not in INTERNAL_ENVS:
                error(rid, method, "E_INTERNAL",
                      f"internal envs: {sorted(INTERNAL_ENVS)}")
                return
            respond(rid, method, run_random_policy(payload))
        elif method == "get_config":
            respond(rid, method, {"document": SAMPLE_CONFIG})
        else:
            error(rid, method, "E_METHOD", f"unknown method {method!r}")


def main():
    session = Session()
    for line in sys.stdin:
        if not line.strip():
            continue
        try:
            frame = json.loads(line)
            rid = frame["id"]
            method = frame["method"]
            payload = frame.get("payload", {})
            if frame["kind"] != "request" or not isinstance(rid, int):
                raise ValueError("not a request frame")
            if not isinstance(payload, dict):
                raise ValueError("payload must be an object")
        except Exception:
            error(0, "?", "E_PROTO", "malformed frame")
            continue
        try:
            session.handle(rid, method, payload)
        except Exception as exc:  # never crash the session
            error(rid, method, "E_INTERNAL", repr(exc))


if __name__ == "__main__":
    main()
