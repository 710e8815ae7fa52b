"""Binary checkpoint format.

Little-endian layout, documented field by field in docs/checkpoint-format.md:

    magic           4 bytes  "RLFK"
    format version  u32      currently 1
    config hash     32 bytes sha256 over the canonical config JSON documents
    tensor count    u32
    per tensor      ndim u32, dims u32 each, float64 values
    optimizer count u32      one per aggregated config
    per optimizer   kind u8 (0 sgd, 1 adam); adam adds t u64 then the m and
                    v tensors in the same self-describing layout
    step counter    u64

Loads parse the whole file before touching the network, so a failed load
leaves parameters, optimizer state, and step counter unchanged.
"""

from __future__ import annotations

import hashlib
import io
import struct

import numpy as np

from rlframe.errors import FormatError, IoError, ShapeMismatch

MAGIC = b"RLFK"
VERSION = 1
_SGD, _ADAM = 0, 1


def config_hash(configs) -> bytes:
    blob = "\n".join(c.canonical_json() for c in configs).encode()
    return hashlib.sha256(blob).digest()


def _write_tensor(out, arr: np.ndarray):
    arr = np.ascontiguousarray(arr, dtype="<f8")
    out.write(struct.pack("<I", arr.ndim))
    for dim in arr.shape:
        out.write(struct.pack("<I", dim))
    out.write(arr.tobytes())


class _Reader:
    def __init__(self, data: bytes):
        self.buf = io.BytesIO(data)

    def read(self, n: int) -> bytes:
        chunk = self.buf.read(n)
        if len(chunk) != n:
            raise FormatError("checkpoint truncated")
        return chunk

    def u8(self) -> int:
        return struct.unpack("<B", self.read(1))[0]

    def u32(self) -> int:
        return struct.unpack("<I", self.read(4))[0]

    def u64(self) -> int:
        return struct.unpack("<Q", self.read(8))[0]

    def tensor(self) -> np.ndarray:
        ndim = self.u32()
        if ndim > 8:
            raise FormatError(f"implausible tensor rank {ndim}")
        shape = tuple(self.u32() for _ in range(ndim))
        count = int(np.prod(shape, dtype=np.int64)) if shape else 1
        if count > 100_000_000:
            raise FormatError("implausible tensor size")
        data = self.read(count * 8)
        return np.frombuffer(data, dtype="<f8").reshape(shape).copy()

    def expect_eof(self):
        if self.buf.read(1):
            raise FormatError("trailing bytes after checkpoint payload")


def save_checkpoint(path, configs, params, optimizers, step_counter: int):
    out = io.BytesIO()
    out.write(MAGIC)
    out.write(struct.pack("<I", VERSION))
    out.write(config_hash(configs))
    out.write(struct.pack("<I", len(params)))
    for tensor in params:
        _write_tensor(out, tensor)
    out.write(struct.pack("<I", len(optimizers)))
    for opt in optimizers:
        if opt.kind == "sgd":
            out.write(struct.pack("<B", _SGD))
        else:
            out.write(struct.pack("<B", _ADAM))
            state = opt.state_dict()
            out.write(struct.pack("<Q", state["t"]))
            for tensor in state["m"]:
                _write_tensor(out, tensor)
            for tensor in state["v"]:
                _write_tensor(out, tensor)
    out.write(struct.pack("<Q", step_counter))
    try:
        with open(path, "wb") as fh:
            fh.write(out.getvalue())
    except OSError as exc:
        raise IoError(f"cannot write checkpoint {path}: {exc}") from exc


def load_checkpoint(path, configs, params, optimizers):
    """Parse and validate; returns (new params, optimizer states, counter)."""
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise IoError(f"cannot read checkpoint {path}: {exc}") from exc

    reader = _Reader(data)
    if reader.read(4) != MAGIC:
        raise FormatError("bad magic; not a checkpoint file")
    version = reader.u32()
    if version != VERSION:
        raise FormatError(f"unsupported checkpoint version {version}")
    if reader.read(32) != config_hash(configs):
        raise ShapeMismatch("checkpoint was written by a different network config")

    count = reader.u32()
    if count != len(params):
        raise ShapeMismatch(f"checkpoint has {count} tensors, network has {len(params)}")
    tensors = []
    for current in params:
        tensor = reader.tensor()
        if tensor.shape != current.shape:
            raise ShapeMismatch(
                f"tensor shape {tensor.shape} does not match network {current.shape}"
            )
        tensors.append(tensor)

    opt_count = reader.u32()
    if opt_count != len(optimizers):
        raise ShapeMismatch("optimizer count mismatch")
    opt_states = []
    for opt, opt_params in optimizers:
        kind = reader.u8()
        if (kind == _SGD) != (opt.kind == "sgd"):
            raise ShapeMismatch("optimizer kind mismatch")
        if kind == _SGD:
            opt_states.append({})
        else:
            t = reader.u64()
            m = [reader.tensor() for _ in opt_params]
            v = [reader.tensor() for _ in opt_params]
            for tensor, current in zip(m + v, opt_params + opt_params):
                if tensor.shape != current.shape:
                    raise ShapeMismatch("optimizer state shape mismatch")
            opt_states.append({"t": t, "m": m, "v": v})

    step_counter = reader.u64()
    reader.expect_eof()
    return tensors, opt_states, step_counter
