import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rlframe.errors import ProtocolError
from rlframe.plugin import decode_f64, decode_frame, encode_f64, encode_frame


def test_float_round_trip_on_ten_thousand_random_doubles():
    rng = np.random.default_rng(99)
    # mix of scales, signs, and subnormals via raw bit patterns
    bits = rng.integers(0, 2**64, size=10_000, dtype=np.uint64)
    values = bits.view(np.float64)
    checked = 0
    for v in values:
        v = float(v)
        if not math.isfinite(v):
            continue
        assert decode_f64(encode_f64(v)) == v
        assert math.copysign(1, decode_f64(encode_f64(v))) == math.copysign(1, v)
        checked += 1
    assert checked > 9000


def test_non_finite_floats_are_rejected():
    for bad in (math.inf, -math.inf, math.nan):
        with pytest.raises(ProtocolError):
            encode_f64(bad)
    with pytest.raises(ProtocolError):
        decode_f64("nan")


def test_frame_round_trip():
    line = encode_frame(7, "request", "step", {"actions": [1], "x": 0.1})
    frame = decode_frame(line)
    assert frame["id"] == 7
    assert frame["kind"] == "request"
    assert frame["method"] == "step"
    assert frame["payload"]["actions"] == [1]
    assert decode_f64(frame["payload"]["x"]) == 0.1


def test_floats_are_encoded_as_strings_on_the_wire():
    line = encode_frame(1, "response", "step", {"rewards": [1.25, -0.5]})
    raw = json.loads(line)
    assert raw["payload"]["rewards"] == ["1.25", "-0.5"]


@pytest.mark.parametrize(
    "line",
    [
        "",
        "not json",
        "[1,2,3]",
        '{"id": -1, "kind": "request", "method": "x"}',
        '{"id": 1, "kind": "bogus", "method": "x"}',
        '{"id": 1, "kind": "request"}',
        '{"id": 1, "kind": "request", "method": 5}',
        '{"id": 1, "kind": "request", "method": "x", "payload": []}',
        '{"id": true, "kind": "request", "method": "x"}',
        b"\xff\xfe garbage bytes",
    ],
)
def test_malformed_frames_raise_protocol_error(line):
    with pytest.raises(ProtocolError):
        decode_frame(line)


@given(st.binary(max_size=200))
@settings(max_examples=300)
def test_decoder_never_raises_anything_but_protocol_error(data):
    try:
        decode_frame(data)
    except ProtocolError:
        pass


def test_fuzz_100k_random_frames_never_crash():
    rng = np.random.default_rng(1234)
    survived = 0
    for _ in range(100_000):
        n = int(rng.integers(0, 60))
        blob = bytes(rng.integers(0, 256, size=n, dtype=np.uint8))
        try:
            decode_frame(blob)
        except ProtocolError:
            pass
        survived += 1
    assert survived == 100_000
