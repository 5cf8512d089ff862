from .crtp_models import (
    CrtpPacket,
    CrtpPort,
    Datarate,
    MissionInstruction,
    MissionOp,
    RadioUri,
    Setpoint,
    UriMedium,
)
from .core_models import (
    AgentRole,
    DeliveryOutcome,
    Discovery,
    DroneState,
    EventKind,
    FlightMode,
    FlightStatus,
    HijackerState,
    HijackPhase,
    HopSchedule,
    InterferenceKind,
    JamAlert,
    LandingReason,
    LinkMetrics,
    Metrics,
    SafeModeAction,
    TraceEvent,
    TransceiverRole,
)
from .scenario_models import (
    DefenseSection,
    DroneConfig,
    GcsConfig,
    HijackerConfig,
    JammerConfig,
    MediumSection,
    Scenario,
    SimSection,
)

__all__ = [
    "CrtpPacket",
    "CrtpPort",
    "Datarate",
    "MissionInstruction",
    "MissionOp",
    "RadioUri",
    "Setpoint",
    "UriMedium",
    "AgentRole",
    "DeliveryOutcome",
    "Discovery",
    "DroneState",
    "EventKind",
    "FlightMode",
    "FlightStatus",
    "HijackerState",
    "HijackPhase",
    "HopSchedule",
    "InterferenceKind",
    "JamAlert",
    "LandingReason",
    "LinkMetrics",
    "Metrics",
    "SafeModeAction",
    "TraceEvent",
    "TransceiverRole",
    "DefenseSection",
    "DroneConfig",
    "GcsConfig",
    "HijackerConfig",
    "JammerConfig",
    "MediumSection",
    "Scenario",
    "SimSection",
]
