import json

import pytest

from rlframe.errors import ParseError, ValidationError
from rlframe.net import parse_config

from helpers import config_doc


def doc_text(*args, **kwargs):
    return json.dumps(config_doc(*args, **kwargs))


def test_valid_two_layer_classifier():
    config = parse_config(
        doc_text((4, 16, 2), ("relu", "softmax"), loss="cross_entropy")
    )
    assert config.input_dim == 4
    assert config.output_dim == 2
    assert config.head_activation == "softmax"
    assert config.loss.kind == "cross_entropy"


def test_dim_break_names_field():
    doc = config_doc((4, 16, 2), ("relu", "softmax"), loss="cross_entropy")
    doc["layers"][1]["in"] = 8
    with pytest.raises(ValidationError) as err:
        parse_config(json.dumps(doc))
    assert err.value.field == "layers[1].in"


def test_softmax_on_hidden_layer_rejected():
    with pytest.raises(ValidationError) as err:
        parse_config(doc_text((4, 4, 2), ("softmax", "linear")))
    assert err.value.field == "layers[0].activation"


def test_cross_entropy_requires_softmax_head():
    with pytest.raises(ValidationError) as err:
        parse_config(doc_text((4, 2), ("linear",), loss="cross_entropy"))
    assert err.value.field == "loss.kind"


def test_malformed_document_is_parse_error():
    with pytest.raises(ParseError):
        parse_config("{not json")


def test_unknown_activation_rejected():
    doc = config_doc((4, 2), ("linear",))
    doc["layers"][0]["activation"] = "gelu"
    with pytest.raises(ValidationError) as err:
        parse_config(json.dumps(doc))
    assert err.value.field == "layers[0].activation"


def test_nonpositive_learning_rate_rejected():
    with pytest.raises(ValidationError) as err:
        parse_config(doc_text((4, 2), ("linear",), learning_rate=0.0))
    assert err.value.field == "optimizer.learning_rate"


def test_wrong_schema_version_rejected():
    doc = config_doc((4, 2), ("linear",))
    doc["schema_version"] = 99
    with pytest.raises(ValidationError):
        parse_config(json.dumps(doc))


def test_adam_defaults():
    config = parse_config(doc_text((4, 2), ("linear",), optimizer="adam"))
    assert config.optimizer.beta1 == 0.9
    assert config.optimizer.beta2 == 0.999
    assert config.optimizer.epsilon == 1e-8


def test_round_trip_through_canonical_json():
    config = parse_config(doc_text((4, 16, 2), ("tanh", "softmax"), loss="cross_entropy"))
    again = parse_config(config.canonical_json())
    assert again == config
