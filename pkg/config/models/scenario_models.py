"""Declarative scenario models. Every key has a default drawn from config.settings."""

from typing import Annotated, Any, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from config.settings import (
    get_defense_config,
    get_medium_config,
    get_phy_config,
    get_timing_config,
)

from .core_models import FlightMode, HopSchedule, SafeModeAction
from .crtp_models import Datarate, MissionInstruction, MissionOp, RadioUri, Setpoint


def _split_list(value: Any) -> Any:
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    return value


def _parse_uri_value(value: Any) -> Any:
    if isinstance(value, str):
        from services.codec.uri import parse_uri
        return parse_uri(value.strip())
    return value


def _parse_address_value(value: Any) -> Any:
    if isinstance(value, str):
        from services.codec.uri import parse_address
        return parse_address(value.strip())
    return value


def _parse_setpoint(value: Any) -> Any:
    if isinstance(value, str):
        parts = _split_list(value)
        if len(parts) != 4:
            raise ValueError("setpoint needs roll,pitch,yaw,thrust")
        return dict(zip(("roll", "pitch", "yaw", "thrust"), parts))
    return value


def parse_mission(text: str) -> List[dict]:
    """Parse `op@tick[:x:y:z[:duration]]` items separated by commas."""
    items = []
    for raw in _split_list(text):
        op, _, rest = raw.partition("@")
        if not rest:
            raise ValueError(f"mission item {raw!r} has no @tick")
        fields = rest.split(":")
        if len(fields) > 5:
            raise ValueError(f"mission item {raw!r} has too many fields")
        item = {"op": op.strip(), "at_tick": fields[0]}
        for key, value in zip(("x", "y", "z", "duration"), fields[1:]):
            item[key] = value
        items.append(item)
    return items


DEFAULT_HOP_SET = list(range(1, 126, 8))
ENTITY_ID_PATTERN = r"^[A-Za-z0-9_.-]+$"


# ----------------------------------------------------------------------
# GLOBAL SECTIONS
# ----------------------------------------------------------------------

class SimSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    duration: int = Field(default=1000, ge=1)
    tick_rate: int = Field(default_factory=lambda: get_timing_config().tick_rate, ge=1)
    seed: int = Field(default=1, ge=0)
    scan_dwell: int = Field(default_factory=lambda: get_timing_config().scan_dwell, ge=1)
    scan_datarates: List[Datarate] = Field(default_factory=lambda: list(Datarate), min_length=1)

    split_validator = field_validator("scan_datarates", mode="before")(_split_list)


class MediumSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    noise_floor_db: float = Field(default_factory=lambda: get_medium_config().noise_floor_db)
    theta_low_db: float = Field(default_factory=lambda: get_medium_config().theta_low_db)
    theta_high_db: float = Field(default_factory=lambda: get_medium_config().theta_high_db)
    adjacent_leakage_db: float = Field(default_factory=lambda: get_medium_config().adjacent_leakage_db)
    air_log_retention: int = Field(default_factory=lambda: get_medium_config().air_log_retention, ge=1)

    @model_validator(mode="after")
    def _ramp_order(self) -> "MediumSection":
        if self.theta_low_db >= self.theta_high_db:
            raise ValueError("theta_low_db must be below theta_high_db")
        return self


class DefenseSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    hopping: bool = False
    hop_set: List[int] = Field(default_factory=lambda: list(DEFAULT_HOP_SET))
    epoch_length: int = Field(default_factory=lambda: get_defense_config().epoch_length, ge=1)
    hop_seed: Optional[int] = Field(default=None, ge=0)

    jam_detection: bool = False
    jam_window: int = Field(default_factory=lambda: get_defense_config().jam_window, ge=1)
    jam_threshold: float = Field(default_factory=lambda: get_defense_config().jam_threshold, ge=0.0, le=1.0)

    safe_mode: bool = False

    @field_validator("hop_set", mode="before")
    @classmethod
    def _split_hop_set(cls, v: Any) -> Any:
        return _split_list(v)

    def hop_schedule(self, default_seed: int) -> Optional[HopSchedule]:
        if not self.hopping:
            return None
        seed = self.hop_seed if self.hop_seed is not None else default_seed
        return HopSchedule(hop_set=self.hop_set, epoch_length=self.epoch_length, seed=seed)


# ----------------------------------------------------------------------
# ROSTER ENTRIES
# ----------------------------------------------------------------------

class DroneConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    role: Literal["drone"] = "drone"
    id: str = Field(pattern=ENTITY_ID_PATTERN)
    uri: RadioUri
    mode: FlightMode = FlightMode.NON_AUTONOMOUS
    safe_mode: bool = False
    safe_mode_actions: List[SafeModeAction] = Field(
        default_factory=lambda: [SafeModeAction.EMERGENCY_LANDING]
    )
    loss_timeout: int = Field(default_factory=lambda: get_timing_config().loss_timeout, ge=1)
    land_duration: int = Field(default_factory=lambda: get_timing_config().land_duration, ge=0)

    uri_validator = field_validator("uri", mode="before")(_parse_uri_value)
    actions_validator = field_validator("safe_mode_actions", mode="before")(_split_list)


class GcsConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    role: Literal["gcs"] = "gcs"
    id: str = Field(pattern=ENTITY_ID_PATTERN)
    link: RadioUri
    radio_address: bytes = Field(default=bytes.fromhex("0A0A0A0A0A"), min_length=5, max_length=5)
    tx_power_db: float = Field(default_factory=lambda: get_medium_config().tx_power_db)
    start_tick: int = Field(default=0, ge=0)
    command_period: int = Field(default_factory=lambda: get_timing_config().command_period, ge=1)
    ack_timeout: int = Field(default_factory=lambda: get_timing_config().ack_timeout, ge=1)
    setpoint: Setpoint = Field(default_factory=lambda: Setpoint(thrust=40000))
    land_at: Optional[int] = Field(default=None, ge=0)
    mission: List[MissionInstruction] = Field(default_factory=list)

    link_validator = field_validator("link", mode="before")(_parse_uri_value)
    address_validator = field_validator("radio_address", mode="before")(_parse_address_value)
    setpoint_validator = field_validator("setpoint", mode="before")(_parse_setpoint)

    @field_validator("mission", mode="before")
    @classmethod
    def _parse_mission(cls, v: Any) -> Any:
        return parse_mission(v) if isinstance(v, str) else v

    @field_validator("mission")
    @classmethod
    def _mission_order(cls, v: List[MissionInstruction]) -> List[MissionInstruction]:
        ticks = [item.at_tick for item in v]
        if ticks != sorted(ticks):
            raise ValueError("mission items must be in tick order")
        if v and v[-1].op != MissionOp.LAND:
            raise ValueError("mission must end with land")
        return v


class JammerConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    role: Literal["jammer"] = "jammer"
    id: str = Field(pattern=ENTITY_ID_PATTERN)
    channel: int = Field(ge=0, le=125)
    amplitude: float = Field(default=1.0, ge=0.0)
    sample_rate: float = Field(default_factory=lambda: get_phy_config().sample_rate, gt=0)
    rf_gain: float = Field(default_factory=lambda: get_phy_config().rf_gain_db)
    if_gain: float = Field(default_factory=lambda: get_phy_config().if_gain_db)
    bb_gain: float = Field(default_factory=lambda: get_phy_config().bb_gain_db)
    cutoff: float = Field(default_factory=lambda: get_phy_config().cutoff_hz, gt=0)
    transition: float = Field(default_factory=lambda: get_phy_config().transition_hz, gt=0)
    tx_power_db: float = 0.0
    start_tick: int = Field(default=0, ge=0)
    stop_tick: Optional[int] = Field(default=None, ge=0)

    @model_validator(mode="after")
    def _window(self) -> "JammerConfig":
        if self.stop_tick is not None and self.stop_tick <= self.start_tick:
            raise ValueError("stop_tick must come after start_tick")
        if self.cutoff + self.transition > self.sample_rate / 2:
            raise ValueError("cutoff + transition must not exceed sample_rate / 2")
        return self


class HijackerConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    role: Literal["hijacker"] = "hijacker"
    id: str = Field(pattern=ENTITY_ID_PATTERN)
    radio_address: bytes = Field(default=bytes.fromhex("0B0B0B0B0B"), min_length=5, max_length=5)
    tx_power_db: float = Field(default_factory=lambda: get_medium_config().tx_power_db)
    start_tick: int = Field(default=0, ge=0)
    datarates: Optional[List[Datarate]] = None
    dwell: Optional[int] = Field(default=None, ge=1)
    probe_addresses: List[bytes] = Field(default_factory=list)
    target_address: Optional[bytes] = None
    cw_margin_db: float = 20.0
    cw_duration: int = Field(default_factory=lambda: get_timing_config().cw_duration, ge=1)
    ack_timeout: int = Field(default_factory=lambda: get_timing_config().ack_timeout, ge=1)
    command_period: int = Field(default_factory=lambda: get_timing_config().command_period, ge=1)
    setpoint: Setpoint = Field(default_factory=lambda: Setpoint(thrust=30000))
    sample_rate: float = Field(default_factory=lambda: get_phy_config().sample_rate, gt=0)

    address_validator = field_validator("radio_address", "target_address", mode="before")(_parse_address_value)
    setpoint_validator = field_validator("setpoint", mode="before")(_parse_setpoint)

    @field_validator("datarates", mode="before")
    @classmethod
    def _split_rates(cls, v: Any) -> Any:
        return _split_list(v)

    @field_validator("probe_addresses", mode="before")
    @classmethod
    def _split_probes(cls, v: Any) -> Any:
        v = _split_list(v)
        return [_parse_address_value(item) for item in v] if isinstance(v, list) else v


RosterEntry = Annotated[
    Union[DroneConfig, GcsConfig, JammerConfig, HijackerConfig],
    Field(discriminator="role"),
]


# ----------------------------------------------------------------------
# SCENARIO
# ----------------------------------------------------------------------

class Scenario(BaseModel):
    """A fully validated experiment description."""
    model_config = ConfigDict(extra="forbid")

    sim: SimSection = Field(default_factory=SimSection)
    medium: MediumSection = Field(default_factory=MediumSection)
    defense: DefenseSection = Field(default_factory=DefenseSection)
    roster: List[RosterEntry] = Field(default_factory=list)

    @property
    def drones(self) -> List[DroneConfig]:
        return [entry for entry in self.roster if isinstance(entry, DroneConfig)]

    @property
    def gcs_stations(self) -> List[GcsConfig]:
        return [entry for entry in self.roster if isinstance(entry, GcsConfig)]

    @property
    def jammers(self) -> List[JammerConfig]:
        return [entry for entry in self.roster if isinstance(entry, JammerConfig)]

    @property
    def hijackers(self) -> List[HijackerConfig]:
        return [entry for entry in self.roster if isinstance(entry, HijackerConfig)]

    def entry(self, entity_id: str):
        for item in self.roster:
            if item.id == entity_id:
                return item
        raise KeyError(entity_id)

    def hop_schedule(self) -> Optional[HopSchedule]:
        return self.defense.hop_schedule(self.sim.seed)

    @model_validator(mode="after")
    def _cross_references(self) -> "Scenario":
        from services.errors import ScenarioValidationError

        ids = [item.id for item in self.roster]
        if len(ids) != len(set(ids)):
            raise ScenarioValidationError("id", "roster ids must be unique")

        cells = [drone.uri.cell for drone in self.drones]
        if len(set(cells)) != len(cells):
            raise ScenarioValidationError("uri", "drone URIs must differ in channel, datarate or address")
        if self.defense.hopping:
            hop_addresses = [drone.uri.address for drone in self.drones]
            if len(set(hop_addresses)) != len(hop_addresses):
                raise ScenarioValidationError("uri", "hopping drones must have distinct addresses")

        addresses = {drone.uri.address for drone in self.drones}
        for gcs in self.gcs_stations:
            if gcs.link.cell not in cells:
                raise ScenarioValidationError("link", f"{gcs.id} links to no declared drone")
            if gcs.radio_address in addresses:
                raise ScenarioValidationError("radio_address", f"{gcs.id} reuses a drone address")
        for hijacker in self.hijackers:
            if hijacker.target_address is not None and hijacker.target_address not in addresses:
                raise ScenarioValidationError("target_address", f"{hijacker.id} targets no declared drone")

        if self.defense.hopping:
            try:
                self.hop_schedule()
            except ValueError as exc:
                raise ScenarioValidationError("hop_set", str(exc)) from exc
        return self
