"""Packet-error-rate based jamming detection."""

import logging
from typing import Optional

from config.models.core_models import JamAlert
from services.medium.link_stats import LinkStats

logger = logging.getLogger(__name__)


def detect_jamming(stats: LinkStats, window: int, threshold: float) -> Optional[JamAlert]:
    """Alert when the loss ratio over the last `window` frames reaches `threshold`."""
    if window > stats.capacity:
        raise ValueError(f"window {window} exceeds the stats ring capacity {stats.capacity}")
    if stats.frames_sent < window or len(stats.per_window) < window:
        return None
    per = stats.recent_per(window)
    if per < threshold:
        return None
    return JamAlert(tick=stats.last_tick or 0, per=per, window=window)


class JamDetector:
    """Stateful wrapper that reports only the rising edge of an alert condition."""

    def __init__(self, link: str, window: int, threshold: float):
        self.link = link
        self.window = window
        self.threshold = threshold
        self.active = False

    def update(self, stats: LinkStats) -> Optional[JamAlert]:
        alert = detect_jamming(stats, self.window, self.threshold)
        raised = alert is not None and not self.active
        self.active = alert is not None
        if not raised:
            return None
        logger.info(f"jamming suspected on {self.link}: PER {alert.per:.2f} at tick {alert.tick}")
        return alert.model_copy(update={"link": self.link})
