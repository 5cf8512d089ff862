"""Ground control station: pilots one drone over its radio link."""

import logging
from typing import Optional, Tuple

from config.models.core_models import AgentRole, EventKind, FlightMode, TransceiverRole
from config.models.crtp_models import CrtpPacket, MissionOp, Setpoint
from config.models.scenario_models import GcsConfig
from services.codec.crtp_codec import encode_instruction, encode_setpoint, keepalive_packet
from services.medium.radio_medium import DeliveryResult, RadioMedium, Transceiver

from .base import BaseAgent, OutboundFrame, SimContext

logger = logging.getLogger(__name__)

LANDING_SETPOINT = Setpoint(thrust=0)


class GcsAgent(BaseAgent):
    """
    Sends one frame per tick while the link is up.

    A manually piloted drone gets a setpoint every `command_period` ticks and
    keepalives in between. An autonomous drone gets its mission script, one
    instruction at a time, each retried until acknowledged. The link counts as
    lost once no frame was acknowledged for more than `ack_timeout` ticks.
    """

    role = AgentRole.GCS

    def __init__(self, config: GcsConfig, ctx: SimContext):
        super().__init__(config, ctx)
        drone = ctx.drone_config_for(config.link)
        self.autonomous = drone is not None and drone.mode == FlightMode.AUTONOMOUS
        self.last_ack = config.start_tick
        self.link_lost_tick: Optional[int] = None
        self.done = False
        self.mission_index = 0

    def register(self, medium: RadioMedium) -> None:
        medium.register(Transceiver(
            id=self.id,
            uri=self.config.link,
            role=TransceiverRole.GCS,
            tx_power_db=self.config.tx_power_db,
            radio_address=self.config.radio_address,
        ))

    # ------------------------------------------------------------------
    # Per-tick decision
    # ------------------------------------------------------------------
    def step(self, tick: int) -> None:
        self.follow_hops(tick)
        decision = self.gcs_step(tick)
        if decision is not None:
            packet, purpose = decision
            self.send(self.config.link.address, packet, purpose)

    def gcs_step(self, tick: int) -> Optional[Tuple[CrtpPacket, str]]:
        """Frame to send this tick with its purpose tag, or None."""
        cfg = self.config
        if tick < cfg.start_tick or self.done or self.link_lost_tick is not None:
            return None

        if tick - self.last_ack > cfg.ack_timeout:
            self.link_lost_tick = tick
            self.emit(tick, EventKind.LINK_LOST, last_ack=self.last_ack)
            logger.warning(f"{self.id}: link to {cfg.link} lost at tick {tick}")
            return None

        if self.autonomous:
            return self._mission_frame(tick)
        return self._manual_frame(tick)

    def _mission_frame(self, tick: int) -> Tuple[CrtpPacket, str]:
        mission = self.config.mission
        if self.mission_index < len(mission) and tick >= mission[self.mission_index].at_tick:
            instruction = mission[self.mission_index]
            return encode_instruction(instruction), f"instruction:{instruction.op.value}"
        return keepalive_packet(), "keepalive"

    def _manual_frame(self, tick: int) -> Tuple[CrtpPacket, str]:
        cfg = self.config
        if cfg.land_at is not None and tick >= cfg.land_at:
            return encode_setpoint(LANDING_SETPOINT), "land"
        if (tick - cfg.start_tick) % cfg.command_period == 0:
            return encode_setpoint(cfg.setpoint), "setpoint"
        return keepalive_packet(), "keepalive"

    # ------------------------------------------------------------------
    # Acknowledgements
    # ------------------------------------------------------------------
    def on_outcome(self, tick: int, frame: OutboundFrame, result: DeliveryResult) -> None:
        if not result.delivered:
            return
        self.last_ack = tick
        if frame.purpose == "land":
            self._complete(tick)
        elif frame.purpose.startswith("instruction:"):
            op = self.config.mission[self.mission_index].op
            self.mission_index += 1
            if op == MissionOp.LAND:
                self._complete(tick)

    def _complete(self, tick: int) -> None:
        self.done = True
        self.emit(tick, EventKind.MISSION_COMPLETE, link=str(self.config.link))
        logger.info(f"{self.id}: mission complete at tick {tick}")
