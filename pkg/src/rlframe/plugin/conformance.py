"""Conformance kit: drive a plugin executable through every documented
method and error path.  Returns a {check_name: (ok, detail)} report so
plugin authors can run it against their own implementations.
"""

from __future__ import annotations

from rlframe.errors import ProtocolError, RemoteError, Timeout
from rlframe.plugin import framing
from rlframe.plugin.client import RemoteEnvironment


def run_environment_conformance(command, seed: int = 123) -> dict:
    checks: dict[str, tuple[bool, str]] = {}

    def check(name, ok, detail=""):
        checks[name] = (bool(ok), detail)

    # handshake and descriptor
    try:
        env = RemoteEnvironment(command, seed=seed)
        check("handshake", True)
    except Exception as exc:
        check("handshake", False, repr(exc))
        return checks
    d = env.descriptor
    check("descriptor_sane", d.num_agents >= 1 and d.num_objectives >= 1)

    # episode cycle
    try:
        env.reset()
        states = env.get_state()
        check("reset_get_state", len(states) == d.num_agents
              and all(len(s) == d.state_dim for s in states))
        rewards = env.step([0] * d.num_agents)
        check("step_rewards", len(rewards) == d.num_objectives)
        env.is_terminal()
        check("is_terminal", True)
    except Exception as exc:
        check("episode_cycle", False, repr(exc))

    # documented error paths, all of which must leave the session usable
    try:
        env._session.request("step", {"actions": [9999] * d.num_agents})
        check("invalid_action_rejected", False, "no error raised")
    except RemoteError as exc:
        check("invalid_action_rejected", exc.code == framing.E_ACTION, exc.code)
    except Exception as exc:
        check("invalid_action_rejected", False, repr(exc))

    try:
        env._session.request("no_such_method", {})
        check("unknown_method_rejected", False, "no error raised")
    except RemoteError as exc:
        check("unknown_method_rejected", exc.code == framing.E_METHOD, exc.code)
    except Exception as exc:
        check("unknown_method_rejected", False, repr(exc))

    try:
        env._session._proc.stdin.write("this is not a frame\n")
        env._session._proc.stdin.flush()
        line = env._session._lines.get(timeout=2.0)
        frame = framing.decode_frame(line)
        check(
            "malformed_frame_answered",
            frame["kind"] == "error"
            and frame["payload"].get("code") == framing.E_PROTO,
            str(frame),
        )
    except Exception as exc:
        check("malformed_frame_answered", False, repr(exc))

    try:
        env.reset()
        check("alive_after_errors", True)
    except (RemoteError, ProtocolError, Timeout) as exc:
        check("alive_after_errors", False, repr(exc))

    # seeded determinism across sessions
    try:
        t1 = _trajectory(command, seed)
        t2 = _trajectory(command, seed)
        check("seeded_determinism", t1 == t2)
    except Exception as exc:
        check("seeded_determinism", False, repr(exc))

    env.close()
    return checks


def _trajectory(command, seed, steps: int = 30):
    env = RemoteEnvironment(command, seed=seed)
    env.reset()
    trace = []
    for i in range(steps):
        if env.is_terminal():
            break
        rewards = env.step([i % a for a in env.descriptor.action_space])
        trace.append((rewards.tolist(), [s.tolist() for s in env.get_state()]))
    env.close()
    return trace


def all_passed(checks: dict) -> bool:
    return all(ok for ok, _ in checks.values())
