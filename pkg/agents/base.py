"""
Base agent classes: every roster entry is a deterministic state machine stepped once per tick.
"""

import abc
from dataclasses import dataclass
import logging
from typing import Any, Optional, Protocol

import numpy as np

from config.models.core_models import AgentRole, EventKind, HopSchedule
from config.models.crtp_models import CrtpPacket, RadioUri
from services.medium.radio_medium import DeliveryResult, RadioMedium

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# FRAMES EXCHANGED WITH THE ENGINE
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class OutboundFrame:
    sender_id: str
    address: bytes
    packet: CrtpPacket
    purpose: str = "keepalive"


@dataclass(frozen=True)
class InboundFrame:
    sender_address: bytes
    packet: CrtpPacket
    snr_db: Optional[float] = None


class SimContext(Protocol):
    """What an agent may see of the engine."""

    scenario: Any
    medium: RadioMedium
    hop_schedule: Optional[HopSchedule]

    def rng(self, entity_id: str) -> np.random.Generator: ...

    def emit(self, tick: int, entity: str, kind: EventKind, **details: Any) -> None: ...

    def send(self, frame: OutboundFrame) -> None: ...

    def controller_of(self, uri: RadioUri) -> Optional[bytes]: ...

    def drone_config_for(self, uri: RadioUri) -> Any: ...


# ----------------------------------------------------------------------
# BASE AGENT
# ----------------------------------------------------------------------

class BaseAgent(abc.ABC):
    """Abstract base class for every roster entry."""

    role: AgentRole

    def __init__(self, config: Any, ctx: SimContext):
        self.config = config
        self.id: str = config.id
        self.ctx = ctx

    def register(self, medium: RadioMedium) -> None:
        """Put the agent's radio on the medium. Pure interferers have none."""

    @abc.abstractmethod
    def step(self, tick: int) -> None:
        raise NotImplementedError()

    def on_frame(self, tick: int, frame: InboundFrame) -> None:
        """Called for every frame delivered to this agent's radio."""

    def on_outcome(self, tick: int, frame: OutboundFrame, result: DeliveryResult) -> None:
        """Called once per frame this agent sent, after delivery was decided."""

    # ------------------------------------------------------------------
    # Helpers
    # ------------------------------------------------------------------
    def emit(self, tick: int, kind: EventKind, **details: Any) -> None:
        self.ctx.emit(tick, self.id, kind, **details)

    def send(self, address: bytes, packet: CrtpPacket, purpose: str = "keepalive") -> None:
        self.ctx.send(OutboundFrame(self.id, address, packet, purpose))

    def follow_hops(self, tick: int) -> None:
        schedule = self.ctx.hop_schedule
        if schedule is None:
            return
        from services.defenses.hopping import channel_at_tick
        self.ctx.medium.retune(self.id, channel=channel_at_tick(schedule, tick))


class AgentFactory:
    """Factory to create agents based on roster role."""

    @staticmethod
    def create(config: Any, ctx: SimContext) -> BaseAgent:
        role = AgentRole(config.role)
        logger.debug(f"creating {role.value} agent {config.id}")
        if role == AgentRole.DRONE:
            from agents.drone_agent import DroneAgent
            return DroneAgent(config, ctx)
        elif role == AgentRole.GCS:
            from agents.gcs_agent import GcsAgent
            return GcsAgent(config, ctx)
        elif role == AgentRole.JAMMER:
            from agents.jammer_agent import JammerAgent
            return JammerAgent(config, ctx)
        elif role == AgentRole.HIJACKER:
            from agents.hijacker_agent import HijackerAgent
            return HijackerAgent(config, ctx)
        else:
            raise ValueError(f"No agent found for role: {role}")
