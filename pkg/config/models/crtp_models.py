"""Wire-level models: CRTP packets, radio URIs, setpoints and mission instructions."""

from enum import Enum, IntEnum
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator


# ----------------------------------------------------------------------
# ENUMERATIONS
# ----------------------------------------------------------------------

class Datarate(str, Enum):
    """Radio datarates supported by the nRF24 link."""
    RATE_250K = "250K"
    RATE_1M = "1M"
    RATE_2M = "2M"


class UriMedium(str, Enum):
    RADIO = "radio"
    SERIAL = "serial"


class CrtpPort(IntEnum):
    """Well-known CRTP ports."""
    CONSOLE = 0
    PARAM = 2
    COMMANDER = 3
    MEM = 4
    LOGGING = 5
    LOCALIZATION = 6
    GENERIC_SETPOINT = 7
    HIGH_LEVEL_COMMANDER = 8
    PLATFORM = 13
    LINK = 15


class MissionOp(str, Enum):
    """High-level commander opcodes used by autonomous missions."""
    TAKEOFF = "takeoff"
    GOTO = "goto"
    HOVER = "hover"
    LAND = "land"


MISSION_OPCODES = {
    MissionOp.TAKEOFF: 1,
    MissionOp.GOTO: 2,
    MissionOp.HOVER: 3,
    MissionOp.LAND: 4,
}


def _to_float32(value: float) -> float:
    return float(np.float32(value))


def _coerce_address(value: Any) -> Any:
    if isinstance(value, str):
        from services.codec.uri import parse_address
        return parse_address(value)
    return value


# ----------------------------------------------------------------------
# PACKETS
# ----------------------------------------------------------------------

class CrtpPacket(BaseModel):
    """One CRTP packet: 4-bit port, 2-bit link, 2-bit channel, up to 31 payload bytes."""
    model_config = ConfigDict(frozen=True)

    port: int = Field(ge=0, le=15)
    link: int = Field(default=0, ge=0, le=3)
    channel: int = Field(default=0, ge=0, le=3)
    payload: bytes = Field(default=b"", max_length=31)


class Setpoint(BaseModel):
    """Commander setpoint. Floats are held at float32 precision, as on the wire."""
    model_config = ConfigDict(frozen=True)

    roll: float = 0.0
    pitch: float = 0.0
    yaw: float = 0.0
    thrust: int = Field(default=0, ge=0, le=65535)

    @field_validator("roll", "pitch", "yaw")
    @classmethod
    def _float32(cls, v: float) -> float:
        return _to_float32(v)

    @field_validator("roll", "pitch", "yaw", "thrust", mode="before")
    @classmethod
    def _strip(cls, v: Any) -> Any:
        return v.strip() if isinstance(v, str) else v

    def describe(self) -> str:
        return f"{self.roll:g},{self.pitch:g},{self.yaw:g},{self.thrust}"


class MissionInstruction(BaseModel):
    """A scheduled high-level command of an autonomous mission script."""
    model_config = ConfigDict(frozen=True)

    op: MissionOp
    at_tick: int = Field(default=0, ge=0)
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0
    duration: float = Field(default=0.0, ge=0.0)

    @field_validator("x", "y", "z", "duration")
    @classmethod
    def _float32(cls, v: float) -> float:
        return _to_float32(v)


# ----------------------------------------------------------------------
# RADIO IDENTITY
# ----------------------------------------------------------------------

class RadioUri(BaseModel):
    """Link endpoint identity, e.g. radio://0/81/2M/01E7E7E7E7."""
    model_config = ConfigDict(frozen=True)

    medium: UriMedium = UriMedium.RADIO
    index: int = Field(default=0, ge=0)
    channel: int = Field(ge=0, le=125)
    datarate: Datarate
    address: bytes = Field(min_length=5, max_length=5)

    @field_validator("address", mode="before")
    @classmethod
    def _parse_address(cls, v: Any) -> Any:
        return _coerce_address(v)

    @property
    def cell(self) -> tuple:
        """(channel, datarate, address), the key a receiver answers to."""
        return (self.channel, self.datarate, self.address)

    def __str__(self) -> str:
        from services.codec.uri import format_uri
        return format_uri(self)
