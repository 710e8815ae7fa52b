"""Command-line entry point.

    rlframe train  --manifest run.json [--out DIR] [--seed N]
    rlframe eval   --manifest run.json [--checkpoint CKPT] [--episodes N]
    rlframe play   --manifest run.json [--checkpoint CKPT] [--port P] [--episodes N]
    rlframe plugins list

Exit codes: 0 success, 1 aborted training, 2 validation or input errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import signal
import sys

from rlframe.envs import make_env
from rlframe.errors import RLFrameError, TrainingAborted, UnsupportedEnvironment
from rlframe.human import HumanPlayEnv, PlaySession, SessionConfig
from rlframe.learn import create_learner
from rlframe.manifest import ManifestError, NEURAL_ALGORITHMS, RunManifest, load_manifest
from rlframe.net import create_network, parse_config
from rlframe.plugin.registry import get_plugin, load_registry, registry_path

logger = logging.getLogger("rlframe.cli")


def _load_network(manifest: RunManifest):
    if not manifest.network:
        return None
    configs = []
    for path in manifest.network:
        with open(path) as fh:
            configs.append(parse_config(fh.read()))
    return create_network(configs)


def _build_env(manifest: RunManifest, registry: str | None):
    if manifest.plugin is not None and manifest.plugin.role == "environment":
        plugin = get_plugin(manifest.plugin.name, registry)
        return plugin.convert_environment(
            seed=int(manifest.plugin.params.get("seed", 0))
        )
    return make_env(manifest.env_name, manifest.env_params)


def _build_handle(manifest: RunManifest, registry: str | None):
    """Returns (handle-with-train/evaluate, network-or-None, env-or-None)."""
    if manifest.plugin is not None and manifest.plugin.role == "learner":
        plugin = get_plugin(manifest.plugin.name, registry)
        return plugin.extract_learner(manifest.plugin.params), None, None
    env = _build_env(manifest, registry)
    network = _load_network(manifest)
    handle = create_learner(manifest.monitor, manifest.learner, env, network)
    return handle, network, env


def _write_report_files(out: str | None, name: str, summary: dict):
    if not out:
        return
    os.makedirs(out, exist_ok=True)
    with open(os.path.join(out, f"{name}.json"), "w") as fh:
        json.dump(summary, fh, indent=2)
    if isinstance(summary.get("episodes"), list):
        with open(os.path.join(out, f"{name}_log.txt"), "w") as fh:
            for ep in summary["episodes"]:
                fh.write(
                    f"episode {ep['episode']} thread {ep['thread']} "
                    f"steps {ep['steps']} returns {ep['returns']} loss {ep['loss']}\n"
                )


def _prepare(args) -> RunManifest:
    manifest = load_manifest(args.manifest)
    manifest.apply_seed_override(getattr(args, "seed", None))
    if getattr(args, "out", None):
        manifest.out = args.out
    manifest.resolve_seeds()
    return manifest


def cmd_train(args) -> int:
    manifest = _prepare(args)
    if manifest.out:
        manifest.monitor.checkpoint_dir = manifest.monitor.checkpoint_dir or os.path.join(
            manifest.out, "checkpoints"
        )
    handle, _, _ = _build_handle(manifest, args.registry)
    try:
        report = handle.train()
    except TrainingAborted as exc:
        print(f"training aborted: {exc}", file=sys.stderr)
        if exc.report is not None:
            _write_report_files(manifest.out, "train", exc.report.summary())
        return 1
    summary = report.summary()
    _write_report_files(manifest.out, "train", summary)
    mean = summary.get("mean_return")
    print(
        f"trained: {report.total_episodes} episodes, {report.total_steps} steps, "
        f"mean return {mean}"
    )
    return 0


def cmd_eval(args) -> int:
    manifest = _prepare(args)
    neural = manifest.algorithm in NEURAL_ALGORITHMS
    if neural and not args.checkpoint:
        print("eval: neural learners need --checkpoint", file=sys.stderr)
        return 2
    handle, _, _ = _build_handle(manifest, args.registry)
    report = handle.evaluate(episodes=args.episodes, checkpoint=args.checkpoint)
    summary = report.summary()
    _write_report_files(manifest.out, "eval", summary)
    for i, (m, s) in enumerate(zip(report.mean(), report.std())):
        print(f"objective {i}: mean {m:.6g} std {s:.6g} over {summary['episodes']} episodes")
    return 0


def cmd_play(args) -> int:
    manifest = _prepare(args)
    if manifest.human is None:
        print("play: manifest has no human section", file=sys.stderr)
        return 2
    env = _build_env(manifest, args.registry)
    if not getattr(env, "supports_human_play", False):
        print(f"play: {manifest.env_name!r} does not support human slots", file=sys.stderr)
        return 2

    network = _load_network(manifest)
    if args.checkpoint:
        network.load_model(args.checkpoint)
    elif network is not None:
        logger.warning("no checkpoint given; AI agents play from an untrained network")

    wrapper = HumanPlayEnv(env)
    wrapper.attach_human(manifest.human.agent_index, manifest.human.default_action)

    if network is not None:
        handle = create_learner(manifest.monitor, manifest.learner, wrapper, network)
        policy = lambda states, e: handle.learner.select_actions(states, e, "eval")
    else:
        defaults = manifest.human.default_action
        policy = lambda states, e: [defaults] * len(states)

    config = SessionConfig(
        port=args.port if args.port is not None else manifest.human.port,
        ticks_per_second=manifest.human.tick_rate,
        episodes=args.episodes,
    )
    session = PlaySession(wrapper, policy, config).start()
    print(f"serving on ws://{config.host}:{session.port} (ctrl-c to stop)", flush=True)

    def on_interrupt(signum, frame):
        session.stop()

    previous = signal.signal(signal.SIGINT, on_interrupt)
    try:
        while not session.wait(timeout=0.2):
            pass
    finally:
        signal.signal(signal.SIGINT, previous)
        session.stop()
    for i, scores in enumerate(session.final_scores, start=1):
        print(f"episode {i}: scores {scores}")
    return 0


def cmd_plugins(args) -> int:
    registry = load_registry(args.registry)
    if not registry:
        print(f"no plugins registered in {registry_path(args.registry)}")
        return 0
    for name in sorted(registry):
        entry = registry[name]
        command = entry.get("command") if isinstance(entry, dict) else entry
        print(f"{name}: {' '.join(command)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rlframe")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="repeat for more logging")
    parser.add_argument("--registry", default=None,
                        help="plugin registry file (default: $RLFRAME_PLUGIN_REGISTRY or plugins.json)")
    sub = parser.add_subparsers(dest="command", required=True)

    train = sub.add_parser("train", help="train a learner from a manifest")
    train.add_argument("--manifest", required=True)
    train.add_argument("--out", default=None)
    train.add_argument("--seed", type=int, default=None)
    train.set_defaults(func=cmd_train)

    evaluate = sub.add_parser("eval", help="evaluate a learner / checkpoint")
    evaluate.add_argument("--manifest", required=True)
    evaluate.add_argument("--checkpoint", default=None)
    evaluate.add_argument("--episodes", type=int, default=None)
    evaluate.add_argument("--out", default=None)
    evaluate.add_argument("--seed", type=int, default=None)
    evaluate.set_defaults(func=cmd_eval)

    play = sub.add_parser("play", help="serve live human-in-the-loop play")
    play.add_argument("--manifest", required=True)
    play.add_argument("--checkpoint", default=None)
    play.add_argument("--port", type=int, default=None)
    play.add_argument("--episodes", type=int, default=None,
                      help="stop after N episodes (default: run until interrupted)")
    play.add_argument("--seed", type=int, default=None)
    play.set_defaults(func=cmd_play)

    plugins = sub.add_parser("plugins", help="plugin registry operations")
    plugins_sub = plugins.add_subparsers(dest="plugins_command", required=True)
    plugins_list = plugins_sub.add_parser("list")
    plugins_list.set_defaults(func=cmd_plugins)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING
    if args.verbose == 1:
        level = logging.INFO
    elif args.verbose >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format="%(name)s %(message)s")
    try:
        return args.func(args)
    except ManifestError as exc:
        print(f"manifest error: {exc}", file=sys.stderr)
        return 2
    except UnsupportedEnvironment as exc:
        print(f"unsupported environment: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"missing file: {exc}", file=sys.stderr)
        return 2
    except RLFrameError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
