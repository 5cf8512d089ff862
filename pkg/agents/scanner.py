"""Channel/datarate sweep over the shared medium's air log."""

from collections import OrderedDict
import logging
from typing import Iterable, List, Optional, Sequence, Tuple

from config.models.core_models import Discovery
from config.models.crtp_models import Datarate
from services.codec.uri import MAX_CHANNEL, format_address
from services.medium.radio_medium import RadioMedium

logger = logging.getLogger(__name__)


def sweep_cells(datarates: Iterable[Datarate]) -> List[Tuple[int, Datarate]]:
    """Every (channel, datarate) cell in visiting order: channel-major, rates as given."""
    rates = list(dict.fromkeys(Datarate(rate) for rate in datarates))
    return [(channel, rate) for channel in range(MAX_CHANNEL + 1) for rate in rates]


def sweep_length(datarates: Sequence[Datarate], dwell: int) -> int:
    return len(sweep_cells(datarates)) * dwell


def scan_all(
    medium: RadioMedium,
    datarates: Iterable[Datarate],
    dwell: int,
    start_tick: int = 0,
    observer_id: Optional[str] = None,
) -> List[Discovery]:
    """
    Report every address heard on each cell while the sniffer dwelt on it.

    Cell k is listened to during ticks [start_tick + k*dwell, start_tick + (k+1)*dwell).
    The observer's own probes only count when a receiver acknowledged them, which
    is how an idle drone with no ground station shows up.
    """
    if dwell < 1:
        raise ValueError(f"dwell must be >= 1, got {dwell}")

    discoveries: List[Discovery] = []
    for index, (channel, rate) in enumerate(sweep_cells(datarates)):
        window_start = start_tick + index * dwell
        heard: "OrderedDict[bytes, List[int]]" = OrderedDict()
        for entry in medium.frames_between(window_start, window_start + dwell):
            if entry.channel != channel or entry.datarate != rate:
                continue
            if entry.sender_id == observer_id and not entry.acked:
                continue
            seen = heard.setdefault(entry.address, [0, 0])
            seen[0] += 1
            seen[1] = entry.payload_length
        for address, (count, payload_length) in heard.items():
            discoveries.append(Discovery(
                address=address,
                channel=channel,
                datarate=rate,
                packets_seen=count,
                payload_length=payload_length,
            ))

    discoveries.sort(key=lambda d: (d.channel, d.address, list(Datarate).index(d.datarate)))
    for found in discoveries:
        logger.info(
            f"discovered {format_address(found.address)} on channel {found.channel} "
            f"at {found.datarate.value} ({found.packets_seen} packets)"
        )
    return discoveries


def heard_power_db(
    medium: RadioMedium, found: Discovery, start: int, stop: int, exclude_id: Optional[str] = None
) -> float:
    """Strongest transmitter heard on the discovered cell between start and stop."""
    senders = {
        entry.sender_id
        for entry in medium.frames_between(start, stop)
        if entry.sender_id != exclude_id
        and (entry.channel, entry.datarate, entry.address) == (found.channel, found.datarate, found.address)
    }
    if not senders:
        raise ValueError(f"nothing heard on {format_address(found.address)} between ticks {start} and {stop}")
    return max(medium.transceiver(sender).tx_power_db for sender in senders)
