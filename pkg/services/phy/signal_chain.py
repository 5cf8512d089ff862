"""Attacker transmit chains reduced to the interferer power the medium works with."""

from dataclasses import dataclass
import logging
import math
from typing import Optional

from config.models.scenario_models import JammerConfig
from config.settings import get_phy_config

from .dsp import fir_lowpass
from .info_theory import estimate_mutual_information, scanned_information
from .signal_ops import (
    Signal,
    apply_gain_db,
    db_to_linear,
    gaussian_noise,
    mean_power,
    single_tone,
    snr_db,
    superpose,
)

logger = logging.getLogger(__name__)


def jammer_signal(config: JammerConfig, seed: int, duration: Optional[float] = None) -> Signal:
    """Noise source -> RF, IF and baseband gain stages -> low-pass, as on the SDR flow graph."""
    duration = duration or get_phy_config().capture_duration
    s = gaussian_noise(config.sample_rate, duration, config.amplitude, seed)
    for gain in (config.rf_gain, config.if_gain, config.bb_gain):
        s = apply_gain_db(s, gain)
    return fir_lowpass(s, config.cutoff, config.transition)


def jammer_power(config: JammerConfig, seed: int, duration: Optional[float] = None) -> float:
    """Linear interferer power, relative to a unit-power legitimate transmitter."""
    power = mean_power(jammer_signal(config, seed, duration)) * db_to_linear(config.tx_power_db)
    logger.debug(f"jammer {config.id}: {power:.6g} linear power on channel {config.channel}")
    return power


def cw_tone(power: float, sample_rate: float, duration: Optional[float] = None) -> Signal:
    """Unmodulated carrier at the victim channel centre (zero offset)."""
    duration = duration or get_phy_config().capture_duration
    return single_tone(0.0, sample_rate, duration, math.sqrt(max(power, 0.0)))


def cw_power(reference_power_db: float, margin_db: float, sample_rate: float) -> float:
    """Power of a tone `margin_db` above the strongest legitimate transmitter."""
    return mean_power(cw_tone(db_to_linear(reference_power_db + margin_db), sample_rate))


# ----------------------------------------------------------------------
# SNIFFED LINKS
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class LinkCapture:
    """What a sniffer recovers from one link: capture SNR and information in bits."""

    snr_db: float
    mutual_information: float
    scanned_information: float
    samples: int


def capture_link(
    link_snr_db: float, seed: int, bins: Optional[int] = None, sample_rate: Optional[float] = None
) -> LinkCapture:
    """
    Gaussian baseband x from the transmitter, captured as y = x + receiver noise
    at `link_snr_db`; information is estimated on the in-phase components.
    """
    phy = get_phy_config()
    bins = bins or phy.histogram_bins
    sample_rate = sample_rate or phy.sample_rate
    count = max(int(round(phy.capture_duration * sample_rate)), 10 * bins * bins)
    duration = count / sample_rate

    x = gaussian_noise(sample_rate, duration, 1.0, seed)
    noise = gaussian_noise(sample_rate, duration, math.sqrt(db_to_linear(-link_snr_db)), seed + 1)
    y = superpose(x, noise)
    capture = LinkCapture(
        snr_db=snr_db(x, noise),
        mutual_information=estimate_mutual_information(x.samples.real, y.samples.real, bins),
        scanned_information=scanned_information(x.samples.real, y.samples.real, bins),
        samples=len(x),
    )
    logger.debug(f"captured {len(x)} samples at {capture.snr_db:.2f} dB: I_s {capture.scanned_information:.3f} bits")
    return capture
