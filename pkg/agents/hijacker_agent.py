"""
Two-radio hijacker: sweep for a link, drown its GCS with a carrier, then take the drone over.
"""

from dataclasses import dataclass, field
import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from config.models.core_models import (
    AgentRole,
    Discovery,
    EventKind,
    HijackerState,
    HijackPhase,
    InterferenceKind,
    TransceiverRole,
)
from config.models.crtp_models import CrtpPacket, Datarate, RadioUri, Setpoint
from config.models.scenario_models import HijackerConfig
from services.codec.crtp_codec import encode_setpoint, keepalive_packet
from services.codec.uri import format_address
from services.errors import NoTargetFound
from services.medium.radio_medium import RadioMedium, Transceiver
from services.phy.signal_chain import cw_power
from services.phy.signal_ops import linear_to_db

from .base import BaseAgent, SimContext
from .scanner import heard_power_db, scan_all, sweep_cells

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# PLAN AND ACTIONS
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class HijackPlan:
    """Resolved hijacker parameters (roster entry merged with scenario defaults)."""

    id: str
    radio_address: bytes
    datarates: Tuple[Datarate, ...]
    dwell: int
    probe_addresses: Tuple[bytes, ...] = ()
    target_address: Optional[bytes] = None
    cw_margin_db: float = 20.0
    cw_duration: int = 250
    ack_timeout: int = 50
    command_period: int = 10
    setpoint: Setpoint = field(default_factory=lambda: Setpoint(thrust=30000))
    sample_rate: float = 10e6

    @classmethod
    def from_config(cls, config: HijackerConfig, scan_datarates: Sequence[Datarate], scan_dwell: int) -> "HijackPlan":
        return cls(
            id=config.id,
            radio_address=config.radio_address,
            datarates=tuple(config.datarates or scan_datarates),
            dwell=config.dwell or scan_dwell,
            probe_addresses=tuple(config.probe_addresses),
            target_address=config.target_address,
            cw_margin_db=config.cw_margin_db,
            cw_duration=config.cw_duration,
            ack_timeout=config.ack_timeout,
            command_period=config.command_period,
            setpoint=config.setpoint,
            sample_rate=config.sample_rate,
        )


@dataclass(frozen=True)
class Retune:
    channel: int
    datarate: Datarate


@dataclass(frozen=True)
class Jam:
    channel: int
    power: float


@dataclass(frozen=True)
class Transmit:
    address: bytes
    packet: CrtpPacket
    purpose: str


@dataclass(frozen=True)
class Record:
    kind: EventKind
    details: Dict[str, Any]


HijackAction = Union[Retune, Jam, Transmit, Record]


# ----------------------------------------------------------------------
# TARGETING
# ----------------------------------------------------------------------

def select_target(discoveries: List[Discovery], target_address: Optional[bytes] = None) -> Discovery:
    """The requested address if heard, else the busiest link (first in scan order on ties)."""
    if target_address is not None:
        candidates = [d for d in discoveries if d.address == target_address]
    else:
        candidates = list(discoveries)
    if not candidates:
        wanted = format_address(target_address) if target_address else "any address"
        raise NoTargetFound(f"scan heard nothing matching {wanted}")
    return max(candidates, key=lambda d: d.packets_seen) if target_address is None else candidates[0]


def _on_target(entry, target: Discovery) -> bool:
    return (entry.channel, entry.datarate, entry.address) == (target.channel, target.datarate, target.address)


def _last_foreign_ack(medium: RadioMedium, target: Discovery, own_id: str, start: int, stop: int) -> Optional[int]:
    last = None
    for entry in medium.frames_between(start, stop):
        if entry.acked and entry.sender_id != own_id and _on_target(entry, target):
            last = entry.tick
    return last


# ----------------------------------------------------------------------
# PHASES
# ----------------------------------------------------------------------

def _phase_record(phase: HijackPhase, **details: Any) -> Record:
    return Record(EventKind.PHASE, {"phase": phase.value, **details})


def _command_actions(state: HijackerState, tick: int, plan: HijackPlan) -> List[HijackAction]:
    address = state.target.address
    if (tick - state.phase_started) % plan.command_period == 0:
        return [Transmit(address, encode_setpoint(plan.setpoint), "setpoint")]
    return [Transmit(address, keepalive_packet(), "keepalive")]


def _enter_connect(state: HijackerState, tick: int, plan: HijackPlan) -> Tuple[HijackerState, List[HijackAction]]:
    state = state.model_copy(update={"phase": HijackPhase.CONNECT, "phase_started": tick, "cw_power": 0.0})
    actions: List[HijackAction] = [_phase_record(HijackPhase.CONNECT, address=format_address(state.target.address))]
    return state, actions + _command_actions(state, tick, plan)


def _scan(state: HijackerState, tick: int, medium: RadioMedium, plan: HijackPlan) -> Tuple[HijackerState, List[HijackAction]]:
    cells = sweep_cells(plan.datarates)
    elapsed = tick - state.scan_start
    actions: List[HijackAction] = []

    if elapsed < len(cells) * plan.dwell:
        if elapsed == 0:
            actions.append(_phase_record(HijackPhase.SCAN, cells=len(cells), dwell=plan.dwell))
        if elapsed % plan.dwell == 0:
            channel, rate = cells[elapsed // plan.dwell]
            actions.append(Retune(channel, rate))
            for probe in plan.probe_addresses:
                actions.append(Transmit(probe, keepalive_packet(), "probe"))
        return state, actions

    discoveries = scan_all(medium, plan.datarates, plan.dwell, state.scan_start, plan.id)
    for found in discoveries:
        actions.append(Record(EventKind.DISCOVERY, {
            "address": format_address(found.address),
            "channel": found.channel,
            "datarate": found.datarate.value,
            "packets": found.packets_seen,
        }))
    try:
        target = select_target(discoveries, plan.target_address)
    except NoTargetFound as exc:
        logger.info(f"{plan.id}: {exc}; sweeping again")
        actions.append(Record(EventKind.NO_TARGET, {"discoveries": len(discoveries)}))
        restarted = state.model_copy(update={"scan_start": tick, "phase_started": tick})
        state, more = _scan(restarted, tick, medium, plan)
        return state, actions + more

    state = state.model_copy(update={"target": target})
    actions.append(Retune(target.channel, target.datarate))

    last = _last_foreign_ack(medium, target, plan.id, tick - plan.ack_timeout, tick)
    if last is None:
        # nobody is holding the link
        state, more = _enter_connect(state, tick, plan)
        return state, actions + more

    reference_db = heard_power_db(medium, target, tick - plan.ack_timeout, tick, exclude_id=plan.id)
    power = cw_power(reference_db, plan.cw_margin_db, plan.sample_rate)
    state = state.model_copy(update={
        "phase": HijackPhase.JAM_CW,
        "phase_started": tick,
        "last_foreign_ack": last,
        "cw_power": power,
    })
    actions.append(_phase_record(
        HijackPhase.JAM_CW,
        channel=target.channel,
        power_db=linear_to_db(power),
        address=format_address(target.address),
    ))
    actions.append(Jam(target.channel, power))
    return state, actions


def _jam_cw(state: HijackerState, tick: int, medium: RadioMedium, plan: HijackPlan) -> Tuple[HijackerState, List[HijackAction]]:
    last = _last_foreign_ack(medium, state.target, plan.id, tick - 1, tick)
    if last is not None:
        state = state.model_copy(update={"last_foreign_ack": last})

    jammed_long_enough = tick - state.phase_started >= plan.cw_duration
    link_quiet = tick - state.last_foreign_ack > plan.ack_timeout
    if jammed_long_enough and link_quiet:
        return _enter_connect(state, tick, plan)
    return state, [Jam(state.target.channel, state.cw_power)]


def _acked_last_tick(medium: RadioMedium, state: HijackerState, tick: int, plan: HijackPlan) -> bool:
    return any(
        entry.acked and entry.sender_id == plan.id and entry.address == state.target.address
        for entry in medium.frames_at(tick - 1)
    )


def hijacker_transition(
    state: HijackerState, tick: int, medium: RadioMedium, plan: HijackPlan
) -> Tuple[HijackerState, List[HijackAction]]:
    """Advance the takeover by one tick. Phases only move forward, except Scan restarting itself."""
    if state.phase == HijackPhase.SCAN:
        return _scan(state, tick, medium, plan)
    if state.phase == HijackPhase.JAM_CW:
        return _jam_cw(state, tick, medium, plan)

    if state.phase == HijackPhase.CONNECT and _acked_last_tick(medium, state, tick, plan):
        state = state.model_copy(update={"phase": HijackPhase.CONTROL, "phase_started": tick})
        actions: List[HijackAction] = [_phase_record(HijackPhase.CONTROL, address=format_address(state.target.address))]
        return state, actions + _command_actions(state, tick, plan)
    return state, _command_actions(state, tick, plan)


# ----------------------------------------------------------------------
# AGENT
# ----------------------------------------------------------------------

class HijackerAgent(BaseAgent):
    """Attacker with one sniffing/transmitting radio and one CW transmitter."""

    role = AgentRole.HIJACKER

    def __init__(self, config: HijackerConfig, ctx: SimContext):
        super().__init__(config, ctx)
        sim = ctx.scenario.sim
        self.plan = HijackPlan.from_config(config, sim.scan_datarates, sim.scan_dwell)
        self.state = HijackerState(scan_start=config.start_tick, phase_started=config.start_tick)
        self.phase_ticks: Dict[str, int] = {}

    def register(self, medium: RadioMedium) -> None:
        medium.register(Transceiver(
            id=self.id,
            uri=RadioUri(channel=0, datarate=self.plan.datarates[0], address=self.plan.radio_address),
            role=TransceiverRole.ATTACKER,
            tx_power_db=self.config.tx_power_db,
            radio_address=self.plan.radio_address,
        ))

    def step(self, tick: int) -> None:
        if tick < self.config.start_tick:
            return
        self.state, actions = hijacker_transition(self.state, tick, self.ctx.medium, self.plan)
        for action in actions:
            self._apply(tick, action)

    def _apply(self, tick: int, action: HijackAction) -> None:
        medium = self.ctx.medium
        if isinstance(action, Retune):
            medium.retune(self.id, channel=action.channel, datarate=action.datarate)
        elif isinstance(action, Jam):
            medium.add_interference(action.channel, action.power, InterferenceKind.CW)
        elif isinstance(action, Transmit):
            self.send(action.address, action.packet, action.purpose)
        elif isinstance(action, Record):
            if action.kind == EventKind.PHASE:
                self.phase_ticks.setdefault(action.details["phase"], tick)
                logger.info(f"{self.id}: phase {action.details['phase']} at tick {tick}")
            self.emit(tick, action.kind, **action.details)
        else:
            raise TypeError(f"unknown hijacker action {action!r}")
