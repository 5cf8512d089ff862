from .dsp import Spectrum, fir_lowpass, lowpass_taps, power_spectrum
from .info_theory import (
    EmpiricalDistribution,
    estimate_entropy,
    estimate_mutual_information,
    scanned_information,
)
from .signal_ops import (
    JAMMER_SILENT,
    Signal,
    apply_gain_db,
    gaussian_noise,
    mean_power,
    single_tone,
    snr_db,
    superpose,
)

__all__ = [
    "Spectrum",
    "fir_lowpass",
    "lowpass_taps",
    "power_spectrum",
    "EmpiricalDistribution",
    "estimate_entropy",
    "estimate_mutual_information",
    "scanned_information",
    "JAMMER_SILENT",
    "Signal",
    "apply_gain_db",
    "gaussian_noise",
    "mean_power",
    "single_tone",
    "snr_db",
    "superpose",
]
