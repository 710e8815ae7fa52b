#!/usr/bin/env python3
"""Record a corpus of live server frames for the wire-fidelity test.

Runs a real play session (tank battle, human slot on agent 0, scripted AI
actions) and writes every raw websocket text message, verbatim, one per
line, to fixtures/frames.jsonl.

Usage: PYTHONPATH=../src python3 tools/record_corpus.py  (from frontend/)
"""
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[2] / "src"))

from websockets.sync.client import connect

from rlframe.envs import TankBattle
from rlframe.human import PlaySession, SessionConfig, attach_human
from rlframe.plugin import decode_frame
from rlframe.seeding import make_rng


def main():
    rng = make_rng(7)

    def busy_policy(states, env):
        # mostly movement with occasional fire: traces, kills, and long
        # enough episodes for enemies to spawn and appear in the cells
        return [
            int(rng.integers(4)) if rng.random() < 0.8 else 4 for _ in states
        ]

    env = TankBattle(seed=5, agents=2, spawn_interval=10, max_steps=120)
    wrapper, _ = attach_human(env, 0, 5)
    session = PlaySession(
        wrapper, busy_policy,
        SessionConfig(port=0, ticks_per_second=0.0, episodes=2, min_clients=1,
                      client_buffer=10_000),
    ).start()

    lines = []
    summaries = 0
    with connect(f"ws://127.0.0.1:{session.port}") as ws:
        for message in ws:
            decode_frame(message)  # sanity: server output is well-formed
            lines.append(message.rstrip("\n"))
            if '"summary"' in message:
                summaries += 1
                if summaries == 2:
                    break
    session.stop()

    out = pathlib.Path(__file__).resolve().parents[1] / "fixtures" / "frames.jsonl"
    out.parent.mkdir(exist_ok=True)
    out.write_text("\n".join(lines) + "\n")
    print(f"recorded {len(lines)} messages -> {out}")


if __name__ == "__main__":
    main()
