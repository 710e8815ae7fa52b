"""Plugin registry file: maps plugin names to launch command lines.

The registry is a JSON object {name: {"command": [...]}}.  The default
path is ./plugins.json, overridable with RLFRAME_PLUGIN_REGISTRY.
"""

from __future__ import annotations

import json
import os

from rlframe.errors import HandshakeFailed
from rlframe.plugin.client import Plugin

ENV_VAR = "RLFRAME_PLUGIN_REGISTRY"
DEFAULT_PATH = "plugins.json"


def registry_path(path: str | None = None) -> str:
    return path or os.environ.get(ENV_VAR, DEFAULT_PATH)


def load_registry(path: str | None = None) -> dict:
    path = registry_path(path)
    try:
        with open(path) as fh:
            data = json.load(fh)
    except FileNotFoundError:
        return {}
    except (OSError, json.JSONDecodeError) as exc:
        raise HandshakeFailed(f"cannot read plugin registry {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise HandshakeFailed(f"plugin registry {path} must be a JSON object")
    return data


def get_plugin(name: str, path: str | None = None, timeout_ms: int = 5000) -> Plugin:
    registry = load_registry(path)
    if name not in registry:
        raise HandshakeFailed(
            f"plugin {name!r} not in registry {registry_path(path)}; "
            f"known: {sorted(registry)}"
        )
    entry = registry[name]
    command = entry.get("command") if isinstance(entry, dict) else entry
    if not isinstance(command, list) or not command:
        raise HandshakeFailed(f"plugin {name!r} has no launch command")
    return Plugin(command, timeout_ms=timeout_ms)
