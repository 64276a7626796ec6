"""Training behaviour at reduced scale (CPU budget: minutes, not hours)."""

import time

import numpy as np
import pytest

from scengen.data import make_bimodal_profiles
from scengen.metrics import median_bandwidth_kernel, mmd2
from scengen.model import TrainConfig
from scengen.train import TrainingDiverged, generate, train


@pytest.fixture(scope="module")
def bimodal_run():
    data = make_bimodal_profiles(n=240, seed=0)
    cfg = TrainConfig(epochs=20, batch_size=48, noise_dim=16, seed=0,
                      eval_samples=96)
    t0 = time.perf_counter()
    bundle, report = train(data, cfg)
    elapsed = time.perf_counter() - t0
    return data, bundle, report, elapsed


def test_training_improves_heldout_mmd(bimodal_run):
    data, bundle, report, elapsed = bimodal_run
    assert elapsed < 300.0
    assert report.heldout_mmd[-1] < report.heldout_mmd[0]
    assert np.all(np.isfinite(report.critic_losses))
    assert np.all(np.isfinite(report.generator_losses))
    assert len(report.critic_losses) == 20


def test_generated_samples_non_negative(bimodal_run):
    data, bundle, report, elapsed = bimodal_run
    samples = generate(bundle, 64, seed=3)
    assert samples.shape == (64, 24)
    assert np.all(samples >= 0.0)
    # soft range sanity: not far above the training envelope
    assert samples.max() <= 1.05 * data.max() + 1e-9


def test_generation_deterministic(bimodal_run):
    data, bundle, report, elapsed = bimodal_run
    a = generate(bundle, 16, seed=11)
    b = generate(bundle, 16, seed=11)
    assert np.array_equal(a, b)
    assert generate(bundle, 0, seed=1).shape == (0, 24)


def test_constant_dataset_collapses_to_constant():
    const = np.full((96, 24), 42.0)
    cfg = TrainConfig(epochs=4, batch_size=48, noise_dim=8, seed=1,
                      eval_samples=48)
    bundle, report = train(const, cfg)
    samples = generate(bundle, 32, seed=0)
    assert samples.mean(axis=0) == pytest.approx(np.full(24, 42.0), abs=1.0)
    kernel = median_bandwidth_kernel(const[:32], const[:32])
    rng = np.random.default_rng(0)
    noise = rng.uniform(0, 84, size=(32, 24))
    assert mmd2(samples, const[:32], kernel, biased=True) < \
        mmd2(noise, const[:32], kernel, biased=True)


def test_train_input_validation():
    with pytest.raises(ValueError, match="two batches"):
        train(np.zeros((10, 24)), TrainConfig(epochs=1, batch_size=32))
    with pytest.raises(ValueError, match=r"\(n, 24\)"):
        train(np.zeros((100, 12)), TrainConfig(epochs=1, batch_size=32))
