import math

import numpy as np
import pytest

from services.errors import LengthMismatch, TooFewSamples
from services.phy.info_theory import (
    EmpiricalDistribution,
    estimate_entropy,
    estimate_mutual_information,
    scanned_information,
)
from services.phy.signal_chain import capture_link

GAUSSIAN_ENTROPY = 0.5 * math.log2(2 * math.pi * math.e)


def awgn_pair(snr_db: float, count: int, seed: int):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(count)
    noise = rng.standard_normal(count) * 10 ** (-snr_db / 20)
    return x, x + noise


def test_uniform_bins():
    dist = EmpiricalDistribution(np.linspace(0.0, 1.0, 257), np.full(256, 1 / 256))
    assert estimate_entropy(dist, differential=False) == pytest.approx(8.0)
    assert estimate_entropy(dist) == pytest.approx(0.0, abs=1e-12)


def test_point_mass_has_no_entropy():
    dist = EmpiricalDistribution.from_samples(np.full(100, 3.0), bins=8)
    assert estimate_entropy(dist, differential=False) == 0.0


def test_gaussian_differential_entropy():
    samples = np.random.default_rng(1).standard_normal(1_000_000)
    dist = EmpiricalDistribution.from_samples(samples, bins=256)
    assert estimate_entropy(dist) == pytest.approx(GAUSSIAN_ENTROPY, abs=0.05)


@pytest.mark.parametrize(
    "edges, probs",
    [
        ([0.0, 1.0], [0.5, 0.5]),
        ([0.0, 1.0, 1.0], [0.5, 0.5]),
        ([0.0, 1.0, 2.0], [0.7, 0.7]),
        ([0.0, 1.0, 2.0], [1.5, -0.5]),
    ],
)
def test_distribution_validation(edges, probs):
    with pytest.raises(ValueError):
        EmpiricalDistribution(np.array(edges), np.array(probs))


def test_empty_samples():
    with pytest.raises(TooFewSamples):
        EmpiricalDistribution.from_samples([], bins=4)


@pytest.mark.parametrize("snr, bins", [(0.0, 100), (10.0, 200), (20.0, 300)])
def test_awgn_mutual_information(snr, bins):
    x, y = awgn_pair(snr, 1_000_000, seed=int(snr) + 1)
    expected = 0.5 * math.log2(1 + 10 ** (snr / 10))
    assert estimate_mutual_information(x, y, bins) == pytest.approx(expected, abs=0.05)


def test_independent_signals_share_little():
    rng = np.random.default_rng(4)
    x, y = rng.standard_normal(200_000), rng.standard_normal(200_000)
    assert 0.0 <= estimate_mutual_information(x, y, 64) < 0.05


def test_mutual_information_is_symmetric():
    x, y = awgn_pair(5.0, 100_000, seed=2)
    assert estimate_mutual_information(x, y, 32) == pytest.approx(estimate_mutual_information(y, x, 32))


def test_lossless_channel_scans_everything():
    x = np.random.default_rng(6).standard_normal(100_000)
    assert scanned_information(x, x, 64) == pytest.approx(0.0, abs=1e-9)


def test_noisy_channel_scans_less():
    x, y = awgn_pair(0.0, 100_000, seed=8)
    assert scanned_information(x, y, 64) < 0.0


def test_independent_capture_scans_minus_entropy():
    rng = np.random.default_rng(12)
    x, y = rng.standard_normal(200_000), rng.standard_normal(200_000)
    entropy = estimate_entropy(EmpiricalDistribution.from_samples(x, 64), differential=False)
    assert scanned_information(x, y, 64) == pytest.approx(-entropy, abs=0.05)


def test_too_few_samples_for_bins():
    x = np.zeros(999)
    with pytest.raises(TooFewSamples):
        estimate_mutual_information(x, x, 10)


def test_length_mismatch():
    with pytest.raises(LengthMismatch):
        estimate_mutual_information(np.zeros(5000), np.zeros(4000), 10)


def test_capture_measures_requested_snr():
    capture = capture_link(30.0, seed=3)
    assert capture.snr_db == pytest.approx(30.0, abs=0.1)
    assert capture.samples >= 10 * 64 * 64


def test_capture_at_unity_snr():
    capture = capture_link(0.0, seed=5)
    assert 0.35 < capture.mutual_information < 0.75
    assert capture.scanned_information < capture.mutual_information


def test_stronger_link_leaks_more():
    weak, strong = capture_link(0.0, seed=7), capture_link(20.0, seed=7)
    assert strong.mutual_information > weak.mutual_information
    assert weak.scanned_information < strong.scanned_information <= 1e-9


def test_capture_is_deterministic():
    assert capture_link(10.0, seed=9) == capture_link(10.0, seed=9)
