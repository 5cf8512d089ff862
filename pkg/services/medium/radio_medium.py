"""Shared 2.4 GHz medium: interference accounting and SNR-driven acknowledged delivery."""

from collections import deque
from dataclasses import dataclass, field
import logging
import math
from typing import Deque, Dict, List, Optional, Set, Tuple

from pydantic import BaseModel, ConfigDict

from config.models.core_models import DeliveryOutcome, InterferenceKind, TransceiverRole
from config.models.crtp_models import CrtpPacket, Datarate, RadioUri
from config.models.scenario_models import MediumSection
from config.settings import get_defense_config
from services.codec.crtp_codec import encode_packet
from services.codec.uri import MAX_CHANNEL, format_address
from services.errors import (
    ChannelMismatch,
    ChannelOutOfRange,
    DuplicateReceiver,
    DuplicateTransceiver,
    NotRegistered,
)
from services.phy.signal_ops import db_to_linear

from .link_stats import LinkStats

logger = logging.getLogger(__name__)

BASE_FREQUENCY_MHZ = 2400


# ----------------------------------------------------------------------
# TYPES
# ----------------------------------------------------------------------

class Transceiver(BaseModel):
    """A registered radio. `radio_address` is the identity it presents as a controller."""
    model_config = ConfigDict(frozen=True)

    id: str
    uri: RadioUri
    role: TransceiverRole
    tx_power_db: float = 0.0
    radio_address: Optional[bytes] = None
    active: bool = True

    @property
    def sender_address(self) -> bytes:
        return self.radio_address if self.radio_address is not None else self.uri.address


@dataclass
class ChannelOccupancy:
    channel: int
    interferer_power: float = 0.0
    interferer_kinds: Set[InterferenceKind] = field(default_factory=set)

    def add(self, power: float, kind: InterferenceKind) -> None:
        if power < 0:
            raise ValueError(f"interferer power must be >= 0, got {power}")
        self.interferer_power += power
        self.interferer_kinds.add(kind)


@dataclass(frozen=True)
class AirLogEntry:
    """What a sniffer tuned to (channel, datarate) would see for one frame."""

    tick: int
    channel: int
    datarate: Datarate
    address: bytes
    port: int
    payload_length: int
    sender_id: str
    acked: bool


@dataclass(frozen=True)
class DeliveryResult:
    outcome: DeliveryOutcome
    snr_db: Optional[float] = None
    receiver_id: Optional[str] = None

    @property
    def delivered(self) -> bool:
        return self.outcome == DeliveryOutcome.DELIVERED


# ----------------------------------------------------------------------
# LINK BUDGET
# ----------------------------------------------------------------------

def channel_to_frequency(channel: int) -> int:
    """Centre frequency in MHz: 2400 + channel."""
    if not 0 <= channel <= MAX_CHANNEL:
        raise ChannelOutOfRange(f"channel {channel} outside [0, {MAX_CHANNEL}]")
    return BASE_FREQUENCY_MHZ + channel


def effective_snr(
    sender: Transceiver,
    receiver: Transceiver,
    occupancy: ChannelOccupancy,
    noise_floor_db: float = -30.0,
) -> float:
    if sender.uri.channel != receiver.uri.channel or occupancy.channel != sender.uri.channel:
        raise ChannelMismatch(
            f"{sender.id} on {sender.uri.channel}, {receiver.id} on {receiver.uri.channel}, "
            f"occupancy for {occupancy.channel}"
        )
    signal_power = db_to_linear(sender.tx_power_db)
    return 10.0 * math.log10(signal_power / (db_to_linear(noise_floor_db) + occupancy.interferer_power))


def pdr_from_snr(snr: float, theta_low: float = 5.0, theta_high: float = 15.0) -> float:
    """Piecewise-linear delivery ratio: 0 at or below theta_low, 1 at or above theta_high."""
    if snr <= theta_low:
        return 0.0
    if snr >= theta_high:
        return 1.0
    return (snr - theta_low) / (theta_high - theta_low)


def spread_interference(
    channel: int, power: float, kind: InterferenceKind, leakage_db: float = -20.0
) -> List[Tuple[int, float]]:
    """CW stays on its channel; wideband noise also leaks into the two neighbours."""
    contributions = [(channel, power)]
    if kind == InterferenceKind.GAUSSIAN:
        leaked = power * db_to_linear(leakage_db)
        for neighbour in (channel - 1, channel + 1):
            if 0 <= neighbour <= MAX_CHANNEL:
                contributions.append((neighbour, leaked))
    return contributions


# ----------------------------------------------------------------------
# MEDIUM
# ----------------------------------------------------------------------

class RadioMedium:
    """Single logical RF resource, mutated only by the simulation engine."""

    def __init__(self, params: Optional[MediumSection] = None, stats_capacity: Optional[int] = None):
        self.params = params or MediumSection()
        self.stats_capacity = stats_capacity or get_defense_config().jam_window
        self.tick = 0

        self._transceivers: Dict[str, Transceiver] = {}
        self._receivers: Dict[tuple, str] = {}
        self._occupancy: Dict[int, ChannelOccupancy] = {}
        self._link_stats: Dict[Tuple[str, bytes], LinkStats] = {}
        self._air_log: Dict[int, List[AirLogEntry]] = {}
        self._air_ticks: Deque[int] = deque()

    # -------------------------------------------------------------------------
    # Registration
    # -------------------------------------------------------------------------

    def register(self, transceiver: Transceiver) -> None:
        if transceiver.id in self._transceivers:
            raise DuplicateTransceiver(f"transceiver {transceiver.id} already registered")
        self._claim_cell(transceiver)
        self._transceivers[transceiver.id] = transceiver
        logger.debug(f"registered {transceiver.role.value} {transceiver.id} at {transceiver.uri}")

    def transceiver(self, transceiver_id: str) -> Transceiver:
        try:
            return self._transceivers[transceiver_id]
        except KeyError:
            raise NotRegistered(f"no transceiver {transceiver_id!r}") from None

    @property
    def transceivers(self) -> List[Transceiver]:
        return list(self._transceivers.values())

    def retune(self, transceiver_id: str, channel: Optional[int] = None, datarate: Optional[Datarate] = None) -> None:
        current = self.transceiver(transceiver_id)
        update = {}
        if channel is not None and channel != current.uri.channel:
            channel_to_frequency(channel)
            update["channel"] = channel
        if datarate is not None and datarate != current.uri.datarate:
            update["datarate"] = datarate
        if not update:
            return
        moved = current.model_copy(update={"uri": current.uri.model_copy(update=update)})
        self._release_cell(current)
        try:
            self._claim_cell(moved)
        except DuplicateReceiver:
            self._claim_cell(current)
            raise
        self._transceivers[transceiver_id] = moved

    def deactivate(self, transceiver_id: str) -> None:
        current = self.transceiver(transceiver_id)
        self._release_cell(current)
        self._transceivers[transceiver_id] = current.model_copy(update={"active": False})

    def _claim_cell(self, transceiver: Transceiver) -> None:
        if transceiver.role != TransceiverRole.DRONE or not transceiver.active:
            return
        cell = transceiver.uri.cell
        owner = self._receivers.get(cell)
        if owner is not None and owner != transceiver.id:
            raise DuplicateReceiver(f"{transceiver.id} and {owner} would both answer {transceiver.uri}")
        self._receivers[cell] = transceiver.id

    def _release_cell(self, transceiver: Transceiver) -> None:
        if self._receivers.get(transceiver.uri.cell) == transceiver.id:
            del self._receivers[transceiver.uri.cell]

    # -------------------------------------------------------------------------
    # Interference
    # -------------------------------------------------------------------------

    def begin_tick(self, tick: int) -> None:
        """Start a new tick: interference is re-declared every tick."""
        self.tick = tick
        self._occupancy.clear()
        horizon = tick - self.params.air_log_retention
        while self._air_ticks and self._air_ticks[0] < horizon:
            self._air_log.pop(self._air_ticks.popleft(), None)

    def add_interference(self, channel: int, power: float, kind: InterferenceKind) -> None:
        channel_to_frequency(channel)
        for target, contribution in spread_interference(
            channel, power, kind, self.params.adjacent_leakage_db
        ):
            self.occupancy(target).add(contribution, kind)

    def occupancy(self, channel: int) -> ChannelOccupancy:
        if channel not in self._occupancy:
            self._occupancy[channel] = ChannelOccupancy(channel=channel)
        return self._occupancy[channel]

    # -------------------------------------------------------------------------
    # Delivery
    # -------------------------------------------------------------------------

    def transmit_frame(
        self, sender_id: str, to_address: bytes, packet: CrtpPacket, rng_draw: float
    ) -> DeliveryResult:
        """Deliver iff a drone answers (channel, datarate, address) and rng_draw < PDR."""
        sender = self.transceiver(sender_id)
        frame = encode_packet(packet)
        uri = sender.uri

        receiver_id = self._receivers.get((uri.channel, uri.datarate, to_address))
        snr = None
        delivered = False
        if receiver_id is not None and receiver_id != sender_id:
            receiver = self._transceivers[receiver_id]
            snr = effective_snr(sender, receiver, self.occupancy(uri.channel), self.params.noise_floor_db)
            delivered = rng_draw < pdr_from_snr(snr, self.params.theta_low_db, self.params.theta_high_db)
        else:
            receiver_id = None

        self._stats_for_link(sender_id, to_address).record(self.tick, delivered, snr)
        self._log(AirLogEntry(
            tick=self.tick,
            channel=uri.channel,
            datarate=uri.datarate,
            address=to_address,
            port=packet.port,
            payload_length=len(frame) - 1,
            sender_id=sender_id,
            acked=delivered,
        ))
        return DeliveryResult(
            outcome=DeliveryOutcome.DELIVERED if delivered else DeliveryOutcome.LOST,
            snr_db=snr,
            receiver_id=receiver_id,
        )

    def _log(self, entry: AirLogEntry) -> None:
        if entry.tick not in self._air_log:
            self._air_log[entry.tick] = []
            self._air_ticks.append(entry.tick)
        self._air_log[entry.tick].append(entry)

    def frames_at(self, tick: int) -> List[AirLogEntry]:
        return list(self._air_log.get(tick, ()))

    def frames_between(self, start: int, stop: int) -> List[AirLogEntry]:
        """Air log entries with start <= tick < stop, in transmission order."""
        entries: List[AirLogEntry] = []
        for tick in range(max(start, 0), stop):
            entries.extend(self._air_log.get(tick, ()))
        return entries

    # -------------------------------------------------------------------------
    # Statistics
    # -------------------------------------------------------------------------

    def _stats_for_link(self, sender_id: str, address: bytes) -> LinkStats:
        key = (sender_id, address)
        if key not in self._link_stats:
            self._link_stats[key] = LinkStats(capacity=self.stats_capacity)
        return self._link_stats[key]

    def link_stats(self, sender_id: str, address: bytes) -> LinkStats:
        return self._stats_for_link(sender_id, address)

    def all_link_stats(self) -> List[Tuple[str, str, LinkStats]]:
        """(sender id, hex address, stats) in first-transmission order."""
        return [
            (sender_id, format_address(address), stats)
            for (sender_id, address), stats in self._link_stats.items()
        ]
