from .link_stats import LinkStats
from .radio_medium import (
    AirLogEntry,
    ChannelOccupancy,
    DeliveryResult,
    RadioMedium,
    Transceiver,
    channel_to_frequency,
    effective_snr,
    pdr_from_snr,
    spread_interference,
)

__all__ = [
    "LinkStats",
    "AirLogEntry",
    "ChannelOccupancy",
    "DeliveryResult",
    "RadioMedium",
    "Transceiver",
    "channel_to_frequency",
    "effective_snr",
    "pdr_from_snr",
    "spread_interference",
]
