"""
Histogram estimators for entropy and mutual information.

    estimate_entropy            -- discrete or differential entropy of a binned distribution
    estimate_mutual_information -- I(X;Y) from an equal-width joint histogram
    scanned_information         -- I(X;Y) - H(X), the "amount of data scanned"

All results are in bits.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from config.settings import get_phy_config
from services.errors import LengthMismatch, TooFewSamples


@dataclass(frozen=True, eq=False)
class EmpiricalDistribution:
    """Probabilities over ascending bin edges (len(edges) == len(probabilities) + 1)."""

    bin_edges: np.ndarray
    probabilities: np.ndarray

    def __post_init__(self):
        edges = np.asarray(self.bin_edges, dtype=float)
        probs = np.asarray(self.probabilities, dtype=float)
        if len(edges) != len(probs) + 1:
            raise ValueError("need exactly one more edge than probabilities")
        if np.any(np.diff(edges) <= 0):
            raise ValueError("bin edges must be strictly ascending")
        if np.any(probs < 0):
            raise ValueError("probabilities must be nonnegative")
        if abs(probs.sum() - 1.0) > 1e-9:
            raise ValueError(f"probabilities sum to {probs.sum()}, not 1")
        object.__setattr__(self, "bin_edges", edges)
        object.__setattr__(self, "probabilities", probs)

    @classmethod
    def from_samples(
        cls, samples: Sequence[float], bins: Optional[int] = None, value_range: Optional[Tuple[float, float]] = None
    ) -> "EmpiricalDistribution":
        values = np.asarray(samples, dtype=float)
        if values.size == 0:
            raise TooFewSamples("cannot bin an empty sample set")
        bins = bins or get_phy_config().histogram_bins
        counts, edges = np.histogram(values, bins=bins, range=value_range or _span(values))
        return cls(bin_edges=edges, probabilities=counts / values.size)

    @property
    def bin_widths(self) -> np.ndarray:
        return np.diff(self.bin_edges)


def _span(values: np.ndarray) -> Tuple[float, float]:
    # same degenerate-range rule numpy's histogramdd uses
    low, high = float(values.min()), float(values.max())
    if low == high:
        return low - 0.5, high + 0.5
    return low, high


def estimate_entropy(distribution: EmpiricalDistribution, differential: bool = True) -> float:
    """
    -sum p*log2(p) over nonzero bins; with `differential` the log2(bin width)
    correction turns it into an estimate of the density's differential entropy.
    """
    p = distribution.probabilities
    nonzero = p > 0
    entropy = -float(np.sum(p[nonzero] * np.log2(p[nonzero])))
    if differential:
        entropy += float(np.sum(p[nonzero] * np.log2(distribution.bin_widths[nonzero])))
    return entropy


def _check_pair(x: np.ndarray, y: np.ndarray, bins: int) -> None:
    if len(x) != len(y):
        raise LengthMismatch(f"{len(x)} x samples vs {len(y)} y samples")
    if len(x) < 10 * bins * bins:
        raise TooFewSamples(f"{len(x)} samples; {bins} bins need at least {10 * bins * bins}")


def estimate_mutual_information(
    x_samples: Sequence[float], y_samples: Sequence[float], bins: Optional[int] = None
) -> float:
    x = np.asarray(x_samples, dtype=float)
    y = np.asarray(y_samples, dtype=float)
    bins = bins or get_phy_config().histogram_bins
    _check_pair(x, y, bins)

    joint, _, _ = np.histogram2d(x, y, bins=bins, range=[_span(x), _span(y)])
    pxy = joint / len(x)
    px = pxy.sum(axis=1)
    py = pxy.sum(axis=0)
    nonzero = pxy > 0
    outer = np.outer(px, py)
    mi = float(np.sum(pxy[nonzero] * np.log2(pxy[nonzero] / outer[nonzero])))
    return max(mi, 0.0)


def scanned_information(
    x_samples: Sequence[float], y_samples: Sequence[float], bins: Optional[int] = None
) -> float:
    """I(X;Y) - H(X), both on the same binning of x. Non-positive for lossless channels."""
    x = np.asarray(x_samples, dtype=float)
    bins = bins or get_phy_config().histogram_bins
    _check_pair(x, np.asarray(y_samples, dtype=float), bins)
    mutual = estimate_mutual_information(x, y_samples, bins)
    entropy = estimate_entropy(EmpiricalDistribution.from_samples(x, bins), differential=False)
    return mutual - entropy
