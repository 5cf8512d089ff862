"""Low-pass filtering and averaged power spectra."""

from dataclasses import dataclass
import logging
from typing import Optional

import numpy as np
from scipy import signal as sp_signal

from config.settings import get_phy_config
from services.errors import BadBand, BadFftSize, TooFewSamples

from .signal_ops import Signal, require_samples

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# FIR LOW-PASS
# ----------------------------------------------------------------------

def lowpass_taps(
    sample_rate: float,
    cutoff: float,
    transition: float,
    attenuation_db: Optional[float] = None,
) -> np.ndarray:
    """
    Kaiser-windowed sinc taps, in the style of firdes.low_pass.

    The passband ends at `cutoff` and the stopband starts at `cutoff + transition`;
    the window is sized for `attenuation_db` of stopband rejection. Tap count is odd
    so the filter has an integer group delay.
    """
    if attenuation_db is None:
        attenuation_db = get_phy_config().stopband_attenuation_db
    nyquist = sample_rate / 2.0
    if not cutoff > 0 or not transition > 0 or cutoff + transition > nyquist:
        raise BadBand(
            f"need 0 < cutoff and cutoff + transition <= {nyquist} Hz "
            f"(cutoff={cutoff}, transition={transition})"
        )
    numtaps, beta = sp_signal.kaiserord(attenuation_db, transition / nyquist)
    numtaps |= 1
    taps = sp_signal.firwin(numtaps, cutoff + transition / 2.0, window=("kaiser", beta), fs=sample_rate)
    logger.debug(f"low-pass {cutoff:g} Hz / {transition:g} Hz at {sample_rate:g} S/s: {numtaps} taps")
    return taps


def fir_lowpass(s: Signal, cutoff: float, transition: float) -> Signal:
    """Linear-phase low-pass; output is aligned with the input and has the same length."""
    require_samples(s)
    taps = lowpass_taps(s.sample_rate, cutoff, transition)
    filtered = np.convolve(s.samples, taps, mode="full")
    delay = (len(taps) - 1) // 2
    return Signal(filtered[delay:delay + len(s)], s.sample_rate)


# ----------------------------------------------------------------------
# SPECTRA
# ----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Spectrum:
    """Averaged periodogram, bins ordered from -fs/2 to +fs/2."""

    bin_frequencies: np.ndarray
    power: np.ndarray

    def __post_init__(self):
        if len(self.bin_frequencies) != len(self.power):
            raise ValueError("bin_frequencies and power differ in length")

    def __len__(self) -> int:
        return len(self.power)

    @property
    def total_power(self) -> float:
        return float(np.sum(self.power))

    @property
    def peak_frequency(self) -> float:
        return float(self.bin_frequencies[int(np.argmax(self.power))])

    def power_db(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return 10.0 * np.log10(self.power)

    def power_at(self, frequency: float) -> float:
        """Power of the bin nearest `frequency`."""
        return float(self.power[int(np.argmin(np.abs(self.bin_frequencies - frequency)))])


def power_spectrum(s: Signal, fft_size: int) -> Spectrum:
    """
    Rectangular-window averaged periodogram over consecutive `fft_size` windows.

    A trailing partial window is zero-padded. Bins are normalised by the true sample
    count, so they always sum to the mean power of the whole signal.
    """
    if fft_size < 1 or fft_size & (fft_size - 1):
        raise BadFftSize(f"fft_size must be a power of two, got {fft_size}")
    if len(s) < fft_size:
        raise TooFewSamples(f"{len(s)} samples is fewer than fft_size {fft_size}")

    windows = -(-len(s) // fft_size)
    padded = np.zeros(windows * fft_size, dtype=s.samples.dtype)
    padded[: len(s)] = s.samples
    frames = padded.reshape(windows, fft_size)
    bins = np.abs(np.fft.fft(frames, axis=1)) ** 2
    power = np.fft.fftshift(bins.sum(axis=0) / (float(fft_size) * len(s)))
    freqs = np.fft.fftshift(np.fft.fftfreq(fft_size, d=1.0 / s.sample_rate))
    return Spectrum(bin_frequencies=freqs, power=power)
