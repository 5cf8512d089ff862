"""Synchronized pseudo-random channel hopping."""

from functools import lru_cache

import numpy as np

from config.models.core_models import HopSchedule


@lru_cache(maxsize=8192)
def _hop_index(seed: int, epoch: int, size: int) -> int:
    return int(np.random.default_rng([seed, epoch]).integers(size))


def next_hop_channel(schedule: HopSchedule, epoch: int) -> int:
    """Channel for `epoch`; a pure function of (seed, epoch) so both ends agree."""
    if epoch < 0:
        raise ValueError(f"epoch must be >= 0, got {epoch}")
    return schedule.hop_set[_hop_index(schedule.seed, epoch, len(schedule.hop_set))]


def channel_at_tick(schedule: HopSchedule, tick: int) -> int:
    return next_hop_channel(schedule, tick // schedule.epoch_length)
