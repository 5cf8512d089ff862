"""Simulation state, trace and metric models."""

from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .crtp_models import Datarate, Setpoint


# ----------------------------------------------------------------------
# ENUMERATIONS
# ----------------------------------------------------------------------

class AgentRole(str, Enum):
    """Roster entry kinds, in the order a scenario can declare them."""
    DRONE = "drone"
    GCS = "gcs"
    JAMMER = "jammer"
    HIJACKER = "hijacker"


class TransceiverRole(str, Enum):
    GCS = "gcs"
    DRONE = "drone"
    ATTACKER = "attacker"


class FlightMode(str, Enum):
    AUTONOMOUS = "autonomous"
    NON_AUTONOMOUS = "non_autonomous"


class FlightStatus(str, Enum):
    IDLE = "Idle"
    FLYING = "Flying"
    SUSPENDED = "Suspended"
    LANDING = "Landing"
    LANDED = "Landed"
    CRASHED = "Crashed"
    HIJACKED = "Hijacked"

    @property
    def terminal(self) -> bool:
        return self in (FlightStatus.CRASHED, FlightStatus.LANDED)


class LandingReason(str, Enum):
    MISSION = "mission"
    SAFE_MODE = "safe_mode"


class SafeModeAction(str, Enum):
    EMERGENCY_LANDING = "emergency_landing"
    RETURN_HOME = "return_home"
    SEND_LOCATION = "send_location"


class HijackPhase(str, Enum):
    SCAN = "Scan"
    JAM_CW = "JamCW"
    CONNECT = "Connect"
    CONTROL = "Control"


class InterferenceKind(str, Enum):
    GAUSSIAN = "gaussian"
    CW = "cw"


class DeliveryOutcome(str, Enum):
    DELIVERED = "delivered"
    LOST = "lost"


class EventKind(str, Enum):
    """Trace record kinds."""
    SCENARIO_START = "scenario_start"
    STATUS = "status"
    SETPOINT_RX = "setpoint_rx"
    INSTRUCTION_RX = "instruction_rx"
    LINK_LOST = "link_lost"
    MISSION_COMPLETE = "mission_complete"
    CRASH_LOCATION = "crash_location"
    SAFE_MODE_ACTION = "safe_mode_action"
    JAMMER_ON = "jammer_on"
    JAMMER_OFF = "jammer_off"
    PHASE = "phase"
    DISCOVERY = "discovery"
    NO_TARGET = "no_target"
    JAM_ALERT = "jam_alert"
    LINK_STATS = "link_stats"
    FINAL_STATUS = "final_status"


# ----------------------------------------------------------------------
# AGENT STATE
# ----------------------------------------------------------------------

class DroneState(BaseModel):
    """Symbolic flight state of one drone."""
    model_config = ConfigDict(frozen=True)

    mode: FlightMode
    status: FlightStatus = FlightStatus.IDLE
    controlling_address: Optional[bytes] = None
    gcs_address: Optional[bytes] = None
    last_setpoint: Setpoint = Field(default_factory=Setpoint)
    ticks_since_rx: int = Field(default=0, ge=0)
    safe_mode: bool = False

    loss_timeout: int = Field(default=200, ge=1)
    land_duration: int = Field(default=100, ge=0)
    land_remaining: int = Field(default=0, ge=0)
    landing_reason: Optional[LandingReason] = None
    position: Tuple[float, float, float] = (0.0, 0.0, 0.0)
    mission_step: int = 0

    @model_validator(mode="after")
    def _hijack_needs_foreign_controller(self) -> "DroneState":
        if self.status == FlightStatus.HIJACKED and (
            self.controlling_address is None or self.controlling_address == self.gcs_address
        ):
            raise ValueError("Hijacked requires a controller other than the GCS")
        return self


class Discovery(BaseModel):
    """One scanned link: a (channel, datarate, address) cell with traffic on it."""
    model_config = ConfigDict(frozen=True)

    address: bytes = Field(min_length=5, max_length=5)
    channel: int = Field(ge=0, le=125)
    datarate: Datarate
    packets_seen: int = Field(ge=1)
    payload_length: int = Field(default=0, ge=0, le=31)


class HijackerState(BaseModel):
    """Progress of the two-radio takeover."""
    model_config = ConfigDict(frozen=True)

    phase: HijackPhase = HijackPhase.SCAN
    target: Optional[Discovery] = None
    scan_start: int = 0
    phase_started: int = 0
    last_foreign_ack: Optional[int] = None
    cw_power: float = 0.0


# ----------------------------------------------------------------------
# DEFENSES
# ----------------------------------------------------------------------

class HopSchedule(BaseModel):
    """Shared pseudo-random hop plan of one link."""
    model_config = ConfigDict(frozen=True)

    hop_set: List[int]
    epoch_length: int = Field(default=5, ge=1)
    seed: int = Field(default=0, ge=0)

    @field_validator("hop_set")
    @classmethod
    def _check_hop_set(cls, v: List[int]) -> List[int]:
        if len(v) < 2:
            raise ValueError("hop_set needs at least 2 channels")
        if len(set(v)) != len(v):
            raise ValueError("hop_set channels must be distinct")
        if any(ch < 0 or ch > 125 for ch in v):
            raise ValueError("hop_set channels must lie in [0, 125]")
        return v


class JamAlert(BaseModel):
    model_config = ConfigDict(frozen=True)

    tick: int
    per: float = Field(ge=0.0, le=1.0)
    window: int = Field(ge=1)
    link: Optional[str] = None


# ----------------------------------------------------------------------
# TRACE AND METRICS
# ----------------------------------------------------------------------

class TraceEvent(BaseModel):
    """One trace record. `details` keeps insertion order."""
    tick: int = Field(ge=0)
    entity: str
    kind: EventKind
    details: Dict[str, Any] = Field(default_factory=dict)


class LinkMetrics(BaseModel):
    sender: str
    address: str
    frames_sent: int = 0
    frames_acked: int = 0

    @property
    def frames_lost(self) -> int:
        return self.frames_sent - self.frames_acked

    @property
    def pdr(self) -> float:
        return self.frames_acked / self.frames_sent if self.frames_sent else 1.0


class Metrics(BaseModel):
    links: List[LinkMetrics] = Field(default_factory=list)
    attack_onset: Optional[int] = None
    link_lost_tick: Dict[str, Optional[int]] = Field(default_factory=dict)
    time_to_link_loss: Dict[str, Optional[int]] = Field(default_factory=dict)
    final_status: Dict[str, FlightStatus] = Field(default_factory=dict)
    mission_complete: Dict[str, bool] = Field(default_factory=dict)
    hijack_phases: Dict[str, Dict[str, int]] = Field(default_factory=dict)
    alerts: List[JamAlert] = Field(default_factory=list)
