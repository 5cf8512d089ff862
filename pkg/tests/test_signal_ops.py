import math

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from services.errors import AliasedFrequency, LengthMismatch, RateMismatch, SignalError, TooFewSamples
from services.phy.signal_ops import (
    JAMMER_SILENT,
    Signal,
    apply_gain_db,
    db_to_linear,
    gaussian_noise,
    linear_to_db,
    mean_power,
    single_tone,
    snr_db,
    superpose,
)

FS = 10e6


def constant(value: complex, count: int = 1000) -> Signal:
    return Signal(np.full(count, value, dtype=complex), FS)


def test_noise_sample_count():
    s = gaussian_noise(FS, 0.001, 1.0, 42)
    assert len(s) == 10000
    assert s.sample_rate == FS
    assert s.duration == pytest.approx(0.001)


def test_noise_is_seeded():
    a = gaussian_noise(FS, 0.001, 1.0, 7)
    b = gaussian_noise(FS, 0.001, 1.0, 7)
    c = gaussian_noise(FS, 0.001, 1.0, 8)
    np.testing.assert_array_equal(a.samples, b.samples)
    assert not np.array_equal(a.samples, c.samples)


def test_noise_power_matches_amplitude():
    s = gaussian_noise(FS, 0.01, 2.0, 3)
    assert mean_power(s) == pytest.approx(4.0, rel=0.05)
    # circular: both components carry half the power
    assert np.var(s.samples.real) == pytest.approx(2.0, rel=0.05)
    assert np.var(s.samples.imag) == pytest.approx(2.0, rel=0.05)


def test_zero_amplitude_noise_is_silent():
    assert mean_power(gaussian_noise(FS, 0.001, 0.0, 1)) == 0.0


@pytest.mark.parametrize("rate, duration", [(0.0, 0.001), (FS, 0.0), (-1.0, 0.001)])
def test_bad_generator_arguments(rate, duration):
    with pytest.raises(SignalError):
        gaussian_noise(rate, duration, 1.0, 1)


def test_too_short_capture():
    with pytest.raises(TooFewSamples):
        gaussian_noise(FS, 1e-9, 1.0, 1)


def test_negative_amplitude():
    with pytest.raises(SignalError):
        gaussian_noise(FS, 0.001, -1.0, 1)


def test_tone_has_constant_magnitude():
    s = single_tone(1e6, FS, 0.0001, 0.5)
    np.testing.assert_allclose(np.abs(s.samples), 0.5)
    assert mean_power(s) == pytest.approx(0.25)


@pytest.mark.parametrize("offset", [5e6, -5e6, 7e6])
def test_tone_above_nyquist(offset):
    with pytest.raises(AliasedFrequency):
        single_tone(offset, FS, 0.0001, 1.0)


def test_snr_equal_energy():
    x = gaussian_noise(FS, 0.001, 1.0, 1)
    assert snr_db(x, x) == pytest.approx(0.0)


def test_snr_twenty_db():
    assert snr_db(constant(1.0), constant(0.1j)) == pytest.approx(20.0)


def test_snr_is_antisymmetric():
    x = gaussian_noise(FS, 0.001, 1.0, 1)
    j = gaussian_noise(FS, 0.001, 0.3, 2)
    assert snr_db(x, j) == -snr_db(j, x)


def test_snr_properties_over_random_pairs():
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        x = Signal(rng.standard_normal(64) + 1j * rng.standard_normal(64), FS)
        j = Signal((rng.standard_normal(64) + 1j * rng.standard_normal(64)) * rng.uniform(0.01, 10.0), FS)
        scale = 10.0 ** rng.uniform(-3.0, 3.0) * np.exp(1j * rng.uniform(0.0, 2 * math.pi))
        assert snr_db(x, j) == -snr_db(j, x)
        scaled = snr_db(Signal(x.samples * scale, FS), Signal(j.samples * scale, FS))
        assert scaled == pytest.approx(snr_db(x, j), abs=1e-9)


def test_snr_silent_jammer():
    assert snr_db(constant(1.0), constant(0.0)) == JAMMER_SILENT


def test_snr_length_mismatch():
    with pytest.raises(LengthMismatch):
        snr_db(constant(1.0, 10), constant(1.0, 11))


def test_superpose_adds_samples():
    y = superpose(constant(1.0), constant(2j))
    np.testing.assert_allclose(y.samples, 1.0 + 2j)


def test_superpose_algebra():
    rng = np.random.default_rng(5)
    a, b, c = (Signal(rng.standard_normal(256) + 1j * rng.standard_normal(256), FS) for _ in range(3))
    np.testing.assert_array_equal(superpose(a, b).samples, superpose(b, a).samples)
    np.testing.assert_allclose(
        superpose(superpose(a, b), c).samples, superpose(a, superpose(b, c)).samples, rtol=1e-12, atol=1e-12
    )
    np.testing.assert_array_equal(superpose(a, constant(0.0, 256)).samples, a.samples)


def test_superpose_rejects_mismatch():
    with pytest.raises(LengthMismatch):
        superpose(constant(1.0, 10), constant(1.0, 12))
    with pytest.raises(RateMismatch):
        superpose(constant(1.0), Signal(np.ones(1000, dtype=complex), FS / 2))


def test_gain_round_trip():
    s = gaussian_noise(FS, 0.0001, 1.0, 9)
    back = apply_gain_db(apply_gain_db(s, 14.0), -14.0)
    np.testing.assert_allclose(back.samples, s.samples, atol=1e-12)


@settings(max_examples=50)
@given(st.floats(min_value=-60.0, max_value=60.0))
def test_gain_scales_power(gain):
    s = constant(1.0, 16)
    assert linear_to_db(mean_power(apply_gain_db(s, gain))) == pytest.approx(gain, abs=1e-9)


@settings(max_examples=200)
@given(st.floats(min_value=-60.0, max_value=60.0), st.floats(min_value=-60.0, max_value=60.0))
def test_gain_is_additive(first, second):
    s = gaussian_noise(FS, 0.0001, 1.0, 11)
    chained = apply_gain_db(apply_gain_db(s, first), second)
    np.testing.assert_allclose(chained.samples, apply_gain_db(s, first + second).samples, rtol=1e-9)


def test_db_conversions():
    assert db_to_linear(30.0) == pytest.approx(1000.0)
    assert linear_to_db(0.001) == pytest.approx(-30.0)
    assert linear_to_db(0.0) == -math.inf


def test_signal_rejects_bad_rate():
    with pytest.raises(SignalError):
        Signal(np.ones(4, dtype=complex), 0.0)
