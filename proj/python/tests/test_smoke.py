import math

import numpy as np
import pytest

import sgdmds


def planar(n, seed):
    rng = np.random.default_rng(seed)
    x = rng.uniform(-10, 10, size=(n, 2))
    return x, np.linalg.norm(x[:, None, :] - x[None, :, :], axis=-1)


def test_blobs_shape_and_labels():
    x, labels = sgdmds.generate_blobs(90, d=4, k=3, seed=2)
    assert x.shape == (90, 4)
    assert sorted(set(labels)) == ["0", "1", "2"]
    again, _ = sgdmds.generate_blobs(90, d=4, k=3, seed=2)
    assert np.array_equal(x, again)


def test_providers_agree():
    x, _ = sgdmds.generate_blobs(30, d=5, k=2, seed=1)
    pre = sgdmds.Provider.from_features(x)
    lazy = sgdmds.Provider.from_features(x, mode="lazy")
    assert pre.mode == "precomputed" and lazy.mode == "lazy"
    assert pre.pair_count == 30 * 29 // 2
    assert pre.at(3, 7) == lazy.at(7, 3) == pytest.approx(np.linalg.norm(x[3] - x[7]), rel=1e-12)


def test_matrix_validation():
    with pytest.raises(sgdmds.DataError):
        sgdmds.Provider.from_matrix(np.array([[0.0, 1.0], [2.0, 0.0]]))
    with pytest.raises(ValueError):
        sgdmds.Provider.from_matrix(np.zeros((2, 3)))


def test_full_stress_two_points():
    p = sgdmds.Provider.from_matrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
    s = sgdmds.full_stress(p, np.array([[0.0], [3.0]]))
    assert s.raw_stress == 4.0
    assert s.pair_count_evaluated == 1


def test_pair_gradient_and_update():
    gi, gj = sgdmds.pair_gradient(1.0, 1.0, np.array([0.0, 0.0]), np.array([2.0, 0.0]))
    assert np.allclose(gi, [-2.0, 0.0]) and np.allclose(gj, [2.0, 0.0])
    with pytest.raises(sgdmds.DegeneratePairError):
        sgdmds.pair_gradient(1.0, 1.0, np.zeros(2), np.zeros(2))
    y = np.array([[0.0, 0.0], [2.0, 0.0], [5.0, 5.0]])
    sgdmds.apply_pair_update(y, 0, 1, delta=1.0, weight=1.0, eta=1.0)
    assert np.allclose(y[:2], [[0.5, 0.0], [1.5, 0.0]])
    assert np.array_equal(y[2], [5.0, 5.0])


def test_learning_rates():
    eta = sgdmds.learning_rates(30, eta0=0.5, w_min=1.0)
    assert eta.shape == (30,)
    assert eta[0] == pytest.approx(0.5)
    assert eta[12] == pytest.approx(0.05)
    assert np.all(np.diff(eta) < 0)


def test_fit_sgd_recovers_planar_points():
    _, d = planar(60, 3)
    p = sgdmds.Provider.from_matrix(d)
    r = sgdmds.fit_sgd(p, seed=1)
    assert r["embedding"].shape == (60, 2)
    assert sgdmds.full_stress(p, r["embedding"]).normalized_stress <= 1e-4
    trace = r["trace"]
    assert trace["step"][0] == 0 and math.isnan(trace["learning_rate"][0])
    assert len(trace["step"]) == r["epochs_run"] + 1
    again = sgdmds.fit_sgd(p, seed=1)
    assert np.array_equal(r["embedding"], again["embedding"])


def test_fit_smacof_monotone():
    x, _ = sgdmds.generate_blobs(80, d=6, k=3, seed=4)
    p = sgdmds.Provider.from_features(x)
    r = sgdmds.fit_smacof(p, weights="invsq", seed=2)
    raw = r["trace"]["raw_stress"]
    assert np.all(raw[1:] <= raw[:-1] * (1 + 1e-12))
    assert r["iterations"] == len(raw) - 1


def test_lazy_fit_and_sampled_stress():
    x, _ = sgdmds.generate_blobs(200, d=3, k=4, seed=5)
    p = sgdmds.Provider.from_features(x, mode="lazy")
    r = sgdmds.fit_sgd(p, mode="lazy", epochs=5, seed=3)
    s = sgdmds.sampled_stress(p, r["embedding"], samples=5000, seed=1)
    assert 0.0 <= s.normalized_stress < 1.0


def test_bad_arguments():
    x, _ = sgdmds.generate_blobs(20, seed=0)
    p = sgdmds.Provider.from_features(x)
    with pytest.raises(ValueError):
        sgdmds.fit_sgd(p, weights="cubic")
    with pytest.raises(ValueError):
        sgdmds.fit_sgd(p, epochs=0)
    with pytest.raises(ValueError):
        sgdmds.Provider.from_features(x, mode="sparse")
