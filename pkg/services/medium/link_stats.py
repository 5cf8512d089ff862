"""Per-link delivery counters feeding the jam detector and metrics."""

from collections import deque
from dataclasses import dataclass, field
from typing import Deque, Optional


@dataclass
class LinkStats:
    """Counters for one (sender, destination address) link."""

    capacity: int = 100
    frames_sent: int = 0
    frames_acked: int = 0
    last_snr: Optional[float] = None
    last_tick: Optional[int] = None
    per_window: Deque[bool] = field(default_factory=deque)

    def __post_init__(self):
        if self.capacity < 1:
            raise ValueError("capacity must be >= 1")
        self.per_window = deque(self.per_window, maxlen=self.capacity)

    @property
    def frames_lost(self) -> int:
        return self.frames_sent - self.frames_acked

    @property
    def pdr(self) -> float:
        return self.frames_acked / self.frames_sent if self.frames_sent else 1.0

    def record(self, tick: int, delivered: bool, snr: Optional[float] = None) -> None:
        self.frames_sent += 1
        if delivered:
            self.frames_acked += 1
        self.per_window.append(delivered)
        self.last_tick = tick
        if snr is not None:
            self.last_snr = snr

    def recent_per(self, window: int) -> float:
        """Loss ratio over the newest `window` outcomes."""
        recent = list(self.per_window)[-window:]
        if not recent:
            return 0.0
        return recent.count(False) / len(recent)
