"""Complex-baseband signal generation, superposition, gain and SNR."""

from dataclasses import dataclass
import logging
import math

import numpy as np

from services.errors import (
    AliasedFrequency,
    LengthMismatch,
    RateMismatch,
    SignalError,
    TooFewSamples,
)

logger = logging.getLogger(__name__)

# returned by snr_db when the interferer is identically zero
JAMMER_SILENT = math.inf


@dataclass(frozen=True, eq=False)
class Signal:
    """Immutable complex sample buffer with its sample rate (samples/s)."""

    samples: np.ndarray
    sample_rate: float

    def __post_init__(self):
        if not self.sample_rate > 0:
            raise SignalError(f"sample_rate must be positive, got {self.sample_rate}")
        samples = np.array(self.samples, dtype=np.complex128, copy=True)
        if samples.ndim != 1:
            raise SignalError("samples must be one-dimensional")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def duration(self) -> float:
        return len(self.samples) / self.sample_rate


def _sample_count(sample_rate: float, duration: float) -> int:
    if not sample_rate > 0 or not duration > 0:
        raise SignalError("sample_rate and duration must be positive")
    count = int(round(sample_rate * duration))
    if count < 1:
        raise TooFewSamples(f"{sample_rate} S/s for {duration} s yields no samples")
    return count


def require_samples(s: Signal, minimum: int = 1) -> None:
    if len(s) < minimum:
        raise TooFewSamples(f"need at least {minimum} samples, got {len(s)}")


# ----------------------------------------------------------------------
# GENERATORS
# ----------------------------------------------------------------------

def gaussian_noise(sample_rate: float, duration: float, amplitude: float, seed: int) -> Signal:
    """Circular complex Gaussian noise; `amplitude` is the complex standard deviation."""
    if amplitude < 0:
        raise SignalError(f"amplitude must be >= 0, got {amplitude}")
    count = _sample_count(sample_rate, duration)
    rng = np.random.default_rng(seed)
    scale = amplitude / math.sqrt(2.0)
    real = rng.normal(0.0, scale, count)
    imag = rng.normal(0.0, scale, count)
    return Signal(real + 1j * imag, sample_rate)


def single_tone(freq_offset: float, sample_rate: float, duration: float, amplitude: float) -> Signal:
    if abs(freq_offset) >= sample_rate / 2:
        raise AliasedFrequency(
            f"offset {freq_offset} Hz is not below Nyquist ({sample_rate / 2} Hz)"
        )
    count = _sample_count(sample_rate, duration)
    n = np.arange(count)
    return Signal(amplitude * np.exp(1j * 2 * np.pi * freq_offset * n / sample_rate), sample_rate)


# ----------------------------------------------------------------------
# COMBINATION AND MEASUREMENT
# ----------------------------------------------------------------------

def _check_compatible(a: Signal, b: Signal) -> None:
    if a.sample_rate != b.sample_rate:
        raise RateMismatch(f"{a.sample_rate} S/s vs {b.sample_rate} S/s")
    if len(a) != len(b):
        raise LengthMismatch(f"{len(a)} samples vs {len(b)} samples")


def superpose(x: Signal, interferer: Signal) -> Signal:
    """y = x + j, sample by sample."""
    _check_compatible(x, interferer)
    return Signal(x.samples + interferer.samples, x.sample_rate)


def energy(s: Signal) -> float:
    return float(np.vdot(s.samples, s.samples).real)


def mean_power(s: Signal) -> float:
    require_samples(s)
    return energy(s) / len(s)


def snr_db(x: Signal, j: Signal) -> float:
    """10*log10(|x|^2 / |j|^2). A silent interferer yields JAMMER_SILENT."""
    if len(x) != len(j):
        raise LengthMismatch(f"{len(x)} samples vs {len(j)} samples")
    require_samples(x)
    signal_energy, jam_energy = energy(x), energy(j)
    if jam_energy == 0.0:
        logger.warning("snr_db called with a silent interferer")
        return JAMMER_SILENT
    if signal_energy == 0.0:
        return -math.inf
    # difference of logs keeps snr_db(x, j) == -snr_db(j, x) exactly
    return 10.0 * (math.log10(signal_energy) - math.log10(jam_energy))


def apply_gain_db(s: Signal, gain: float) -> Signal:
    """Amplitude gain: samples scaled by 10^(gain/20)."""
    return Signal(s.samples * 10.0 ** (gain / 20.0), s.sample_rate)


def db_to_linear(power_db: float) -> float:
    return 10.0 ** (power_db / 10.0)


def linear_to_db(power: float) -> float:
    return 10.0 * math.log10(power) if power > 0 else -math.inf
