"""Drone flight-state machine and its agent wrapper."""

from dataclasses import dataclass
import logging
from typing import Any, Dict, Optional, Union

from config.models.core_models import (
    AgentRole,
    DroneState,
    EventKind,
    FlightMode,
    FlightStatus,
    LandingReason,
    TransceiverRole,
)
from config.models.crtp_models import CrtpPacket, CrtpPort, MissionOp, Setpoint
from config.models.scenario_models import DroneConfig
from services.codec.crtp_codec import SETPOINT_FORMAT, decode_instruction, decode_setpoint, is_keepalive
from services.codec.uri import format_address
from services.defenses.safe_mode import safe_mode_policy
from services.errors import CodecError
from services.medium.radio_medium import RadioMedium, Transceiver

from .base import BaseAgent, InboundFrame, SimContext

logger = logging.getLogger(__name__)

_AIRBORNE = (FlightStatus.FLYING, FlightStatus.SUSPENDED, FlightStatus.HIJACKED)


# ----------------------------------------------------------------------
# EVENTS
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class FrameRx:
    sender_address: bytes
    packet: CrtpPacket


@dataclass(frozen=True)
class TickNoRx:
    """One tick elapsed (a frame arriving later in the same tick resets the timer)."""


DroneEvent = Union[FrameRx, TickNoRx]


# ----------------------------------------------------------------------
# TRANSITIONS
# ----------------------------------------------------------------------

def drone_transition(state: DroneState, event: DroneEvent) -> DroneState:
    if state.status.terminal:
        return state
    if isinstance(event, TickNoRx):
        return _on_tick(state)
    if isinstance(event, FrameRx):
        return _on_frame(state, event)
    raise TypeError(f"unknown drone event {event!r}")


def _on_tick(state: DroneState) -> DroneState:
    if state.status == FlightStatus.LANDING:
        remaining = state.land_remaining - 1
        if remaining <= 0:
            return state.model_copy(update={"status": FlightStatus.LANDED, "land_remaining": 0})
        return state.model_copy(update={"land_remaining": remaining})

    if state.status == FlightStatus.IDLE:
        return state

    state = state.model_copy(update={"ticks_since_rx": state.ticks_since_rx + 1})
    if state.status == FlightStatus.SUSPENDED or state.ticks_since_rx <= state.loss_timeout:
        return state

    # link lost
    if state.safe_mode:
        return safe_mode_policy(state, link_lost=True)
    if state.mode == FlightMode.AUTONOMOUS:
        return state.model_copy(update={"status": FlightStatus.CRASHED})
    # holds the last setpoint
    return state.model_copy(update={"status": FlightStatus.SUSPENDED})


def _start_landing(state: DroneState) -> DroneState:
    return state.model_copy(update={
        "status": FlightStatus.LANDING,
        "land_remaining": state.land_duration,
        "landing_reason": LandingReason.MISSION,
    })


def _on_frame(state: DroneState, event: FrameRx) -> DroneState:
    state = state.model_copy(update={"ticks_since_rx": 0})
    if state.status == FlightStatus.LANDING:
        return state

    packet = event.packet
    if is_keepalive(packet):
        return state
    try:
        if packet.port == CrtpPort.COMMANDER:
            return _on_setpoint(state, event.sender_address, decode_setpoint(packet))
        if packet.port == CrtpPort.HIGH_LEVEL_COMMANDER:
            return _on_instruction(state, event.sender_address, decode_instruction(packet))
    except CodecError:
        logger.debug(f"dropping malformed frame on port {packet.port}")
    return state


def _take_over(state: DroneState, sender: bytes, update: Dict[str, Any]) -> DroneState:
    # no authentication: any controller other than the paired GCS takes over
    update.update({"status": FlightStatus.HIJACKED, "controlling_address": sender})
    return state.model_copy(update=update)


def _on_setpoint(state: DroneState, sender: bytes, setpoint: Setpoint) -> DroneState:
    if sender != state.gcs_address:
        return _take_over(state, sender, {"last_setpoint": setpoint})

    update: Dict[str, Any] = {"last_setpoint": setpoint, "controlling_address": sender}
    if setpoint.thrust == 0:
        if state.status in _AIRBORNE:
            return _start_landing(state.model_copy(update=update))
        return state.model_copy(update=update)
    # the paired GCS regains control with any non-zero thrust
    update["status"] = FlightStatus.FLYING
    return state.model_copy(update=update)


def _on_instruction(state: DroneState, sender: bytes, instruction) -> DroneState:
    update: Dict[str, Any] = {"mission_step": state.mission_step + 1}
    if instruction.op in (MissionOp.TAKEOFF, MissionOp.GOTO, MissionOp.HOVER):
        update["position"] = (instruction.x, instruction.y, instruction.z)

    if sender != state.gcs_address:
        return _take_over(state, sender, update)

    update["controlling_address"] = sender
    if instruction.op == MissionOp.LAND:
        if state.status == FlightStatus.IDLE:
            return state.model_copy(update=update)
        return _start_landing(state.model_copy(update={**update, "status": FlightStatus.FLYING}))
    update["status"] = FlightStatus.FLYING
    return state.model_copy(update=update)


# ----------------------------------------------------------------------
# AGENT
# ----------------------------------------------------------------------

class DroneAgent(BaseAgent):
    """A Crazyflie: answers on its URI and reacts to commands and silence."""

    role = AgentRole.DRONE

    def __init__(self, config: DroneConfig, ctx: SimContext):
        super().__init__(config, ctx)
        self.state = DroneState(
            mode=config.mode,
            safe_mode=config.safe_mode or ctx.scenario.defense.safe_mode,
            gcs_address=ctx.controller_of(config.uri),
            loss_timeout=config.loss_timeout,
            land_duration=config.land_duration,
        )
        self.status_ticks: Dict[str, int] = {}
        self.crash_tick: Optional[int] = None

    def register(self, medium: RadioMedium) -> None:
        medium.register(Transceiver(id=self.id, uri=self.config.uri, role=TransceiverRole.DRONE))

    def step(self, tick: int) -> None:
        if self.state.status.terminal:
            return
        self.follow_hops(tick)
        self._apply(tick, drone_transition(self.state, TickNoRx()))

    def on_frame(self, tick: int, frame: InboundFrame) -> None:
        if self.state.status.terminal:
            return
        packet = frame.packet
        if packet.port == CrtpPort.COMMANDER and len(packet.payload) == SETPOINT_FORMAT.size:
            sp = decode_setpoint(packet)
            self.emit(tick, EventKind.SETPOINT_RX, source=format_address(frame.sender_address),
                      setpoint=sp.describe())
        elif packet.port == CrtpPort.HIGH_LEVEL_COMMANDER:
            try:
                instruction = decode_instruction(packet)
            except CodecError:
                instruction = None
            if instruction is not None:
                self.emit(tick, EventKind.INSTRUCTION_RX, source=format_address(frame.sender_address),
                          op=instruction.op.value)
        self._apply(tick, drone_transition(self.state, FrameRx(frame.sender_address, packet)))

    def _apply(self, tick: int, new: DroneState) -> None:
        old, self.state = self.state, new
        if new.status == old.status:
            return

        details: Dict[str, Any] = {"from": old.status.value, "to": new.status.value}
        if new.status == FlightStatus.HIJACKED:
            details["controller"] = format_address(new.controlling_address)
        elif new.status == FlightStatus.SUSPENDED:
            details["last_setpoint"] = new.last_setpoint.describe()
        elif new.status == FlightStatus.LANDING:
            details["reason"] = new.landing_reason.value
        self.emit(tick, EventKind.STATUS, **details)
        self.status_ticks.setdefault(new.status.value, tick)
        logger.info(f"{self.id}: {old.status.value} -> {new.status.value} at tick {tick}")

        if new.status == FlightStatus.LANDING and new.landing_reason == LandingReason.SAFE_MODE:
            for action in self.config.safe_mode_actions:
                self.emit(tick, EventKind.SAFE_MODE_ACTION, action=action.value)
        if new.status == FlightStatus.CRASHED:
            self.crash_tick = tick
            x, y, z = new.position
            self.emit(tick, EventKind.CRASH_LOCATION, x=x, y=y, z=z)
        if new.status.terminal:
            self.ctx.medium.deactivate(self.id)
