from .hopping import channel_at_tick, next_hop_channel
from .jam_detector import JamDetector, detect_jamming
from .safe_mode import safe_mode_policy

__all__ = [
    "channel_at_tick",
    "next_hop_channel",
    "JamDetector",
    "detect_jamming",
    "safe_mode_policy",
]
