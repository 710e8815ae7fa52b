from rlframe.plugin.client import Plugin, PluginSession, RemoteEnvironment, RemoteLearner
from rlframe.plugin.framing import decode_f64, decode_frame, encode_f64, encode_frame
from rlframe.plugin.registry import get_plugin, load_registry

__all__ = [
    "Plugin",
    "PluginSession",
    "RemoteEnvironment",
    "RemoteLearner",
    "decode_f64",
    "decode_frame",
    "encode_f64",
    "encode_frame",
    "get_plugin",
    "load_registry",
]
