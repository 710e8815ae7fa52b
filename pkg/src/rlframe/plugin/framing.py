"""Wire framing shared by the plugin protocol and the live-play server.

One frame is one JSON object per line.  Frames carry:

    id       request/response correlation (monotonically increasing per
             session; notifications use id 0)
    kind     "request" | "response" | "error" | "notify"
    method   operation name
    payload  object with method-specific fields

Floating-point numbers inside payloads are encoded as decimal strings with
17 significant digits, which round-trips every finite IEEE-754 double
exactly regardless of the peer's JSON library.  encode_f64/decode_f64 are
the single codec used everywhere.

decode_frame never raises anything but ProtocolError, whatever the bytes.
"""

from __future__ import annotations

import json
import math

from rlframe.errors import ProtocolError

PROTOCOL_VERSION = 1
KINDS = ("request", "response", "error", "notify")


def encode_f64(value: float) -> str:
    value = float(value)
    if not math.isfinite(value):
        raise ProtocolError(f"cannot encode non-finite float {value!r}")
    return format(value, ".17g")


def decode_f64(text) -> float:
    try:
        value = float(text)
    except (TypeError, ValueError):
        raise ProtocolError(f"bad float field {text!r}") from None
    if not math.isfinite(value):
        raise ProtocolError(f"non-finite float {text!r}")
    return value


def encode_floats(obj):
    """Recursively replace floats with their decimal-string encoding."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        return encode_f64(obj)
    if isinstance(obj, dict):
        return {k: encode_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode_floats(v) for v in obj]
    return obj


def encode_frame(id: int, kind: str, method: str, payload: dict) -> str:
    frame = {
        "id": int(id),
        "kind": kind,
        "method": method,
        "payload": encode_floats(payload or {}),
    }
    return json.dumps(frame, separators=(",", ":")) + "\n"


def decode_frame(line) -> dict:
    """Parse one frame line; raises ProtocolError on any malformation."""
    if isinstance(line, bytes):
        try:
            line = line.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ProtocolError(f"frame is not valid utf-8: {exc}") from None
    try:
        frame = json.loads(line)
    except (json.JSONDecodeError, RecursionError, ValueError) as exc:
        raise ProtocolError(f"frame is not valid JSON: {exc}") from None
    if not isinstance(frame, dict):
        raise ProtocolError("frame must be a JSON object")
    frame_id = frame.get("id")
    if not isinstance(frame_id, int) or isinstance(frame_id, bool) or frame_id < 0:
        raise ProtocolError(f"bad frame id {frame_id!r}")
    kind = frame.get("kind")
    if kind not in KINDS:
        raise ProtocolError(f"bad frame kind {kind!r}")
    method = frame.get("method")
    if not isinstance(method, str):
        raise ProtocolError(f"bad frame method {method!r}")
    payload = frame.get("payload", {})
    if not isinstance(payload, dict):
        raise ProtocolError("frame payload must be an object")
    return {"id": frame_id, "kind": kind, "method": method, "payload": payload}


def error_payload(code: str, message: str) -> dict:
    return {"code": str(code), "message": str(message)}


# error codes shared by every plugin session
E_PROTO = "E_PROTO"            # malformed frame
E_VERSION = "E_VERSION"        # unsupported protocol version
E_METHOD = "E_METHOD"          # unknown method
E_ACTION = "E_ACTION"          # action out of range
E_STATE = "E_STATE"            # call in a bad state (e.g. step after terminal)
E_UNKNOWN_ALGO = "E_UNKNOWN_ALGO"
E_INTERNAL = "E_INTERNAL"
