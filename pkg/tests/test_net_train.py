import numpy as np
import pytest

from rlframe.errors import MissingKey, ShapeError, ValidationError
from rlframe.net import create_network
from rlframe.net.config import LayerSpec, LossSpec, NetworkConfig, OptimizerSpec

from helpers import make_config


def test_mse_unit_example():
    net = create_network(make_config((1, 1), ("linear",)))
    net.parameters[0][...] = 0.0
    net.parameters[1][...] = 1.0  # prediction is exactly 1.0
    loss = net.train_network({"states": [[0.0]], "targets": [[0.0]]})
    assert loss == 1.0


def test_zero_learning_rate_is_a_fixed_point():
    # the config-file schema rejects lr <= 0, so build the spec directly
    config = NetworkConfig(
        layers=(LayerSpec(3, 2, "linear"),),
        loss=LossSpec("mse"),
        optimizer=OptimizerSpec("sgd", 0.0),
        seed=1,
    )
    net = create_network(config)
    before = [p.copy() for p in net.parameters]
    loss = net.train_network(
        {"states": np.ones((4, 3)), "targets": np.zeros((4, 2))}
    )
    assert loss > 0.0
    for b, p in zip(before, net.parameters):
        assert np.array_equal(b, p)


def test_sgd_step_is_exactly_lr_times_gradient():
    net = create_network(make_config((3, 4, 2), ("tanh", "linear"), learning_rate=0.05))
    data = {
        "states": np.random.default_rng(0).normal(size=(5, 3)),
        "targets": np.random.default_rng(1).normal(size=(5, 2)),
    }
    before = [p.copy() for p in net.parameters]
    _, grads = net._loss_and_grads(data)
    net.train_network(data)
    for b, p, g in zip(before, net.parameters, grads[0]):
        assert np.array_equal(p, b - 0.05 * g)


def test_step_counter_increments():
    net = create_network(make_config((2, 1), ("linear",)))
    data = {"states": [[1.0, 2.0]], "targets": [[0.0]]}
    for expected in (1, 2, 3):
        net.train_network(data)
        assert net.step_counter == expected


def test_missing_key_and_shape_errors():
    net = create_network(make_config((2, 1), ("linear",)))
    with pytest.raises(MissingKey):
        net.train_network({"targets": [[0.0]]})
    with pytest.raises(MissingKey):
        net.train_network({"states": [[1.0, 2.0]]})
    with pytest.raises(ShapeError):
        net.train_network({"states": [[1.0, 2.0]], "targets": [[0.0, 1.0]]})


def test_deterministic_parameter_trajectories():
    def run():
        net = create_network(
            make_config((3, 5, 2), ("relu", "linear"), optimizer="adam", learning_rate=0.01, seed=7)
        )
        rng = np.random.default_rng(3)
        for _ in range(20):
            net.train_network(
                {"states": rng.normal(size=(4, 3)), "targets": rng.normal(size=(4, 2))}
            )
        return [p.copy() for p in net.parameters]

    for a, b in zip(run(), run()):
        assert np.array_equal(a, b)


def test_adam_update_matches_hand_rolled_reference():
    net = create_network(
        make_config((2, 2), ("linear",), optimizer="adam", learning_rate=0.1, seed=2)
    )
    data = {"states": np.eye(2), "targets": np.zeros((2, 2))}
    before = [p.copy() for p in net.parameters]
    _, (grads,) = net._loss_and_grads(data)
    net.train_network(data)

    for p0, g, p1 in zip(before, grads, net.parameters):
        m = 0.1 * g
        v = 0.001 * g * g
        m_hat = m / 0.1
        v_hat = v / 0.001
        expected = p0 - 0.1 * m_hat / (np.sqrt(v_hat) + 1e-8)
        assert np.allclose(p1, expected, rtol=0, atol=1e-15)


def test_composite_rejects_single_config():
    with pytest.raises(ValidationError):
        create_network(make_config((3, 2), ("softmax",), loss="a3c_composite"))


def test_concurrent_predicts_during_training_are_safe():
    import threading

    net = create_network(
        make_config((3, 16, 2), ("tanh", "linear"), optimizer="adam",
                    learning_rate=0.01, seed=6)
    )
    rng = np.random.default_rng(0)
    data = {"states": rng.normal(size=(8, 3)), "targets": rng.normal(size=(8, 2))}
    stop = threading.Event()
    failures = []

    def reader():
        x = np.ones((4, 3))
        while not stop.is_set():
            out = net.predict(x)
            if out.shape != (4, 2) or not np.all(np.isfinite(out)):
                failures.append(out)
                return

    readers = [threading.Thread(target=reader) for _ in range(4)]
    for t in readers:
        t.start()
    for _ in range(200):
        net.train_network(data)
    stop.set()
    for t in readers:
        t.join()
    assert not failures
    assert net.step_counter == 200


def test_training_loss_decreases_on_a_small_regression():
    net = create_network(
        make_config((2, 16, 1), ("tanh", "linear"), optimizer="adam", learning_rate=0.01, seed=4)
    )
    rng = np.random.default_rng(9)
    x = rng.normal(size=(64, 2))
    y = (x[:, :1] * 0.5 - x[:, 1:] * 0.25) ** 2
    first = net.train_network({"states": x, "targets": y})
    for _ in range(300):
        last = net.train_network({"states": x, "targets": y})
    assert last < first * 0.1
