"""Bit-exact CRTP packet, setpoint and mission instruction codec."""

import struct

from config.models.crtp_models import (
    MISSION_OPCODES,
    CrtpPacket,
    CrtpPort,
    MissionInstruction,
    Setpoint,
)
from services.errors import (
    BadLength,
    EmptyFrame,
    FieldOutOfRange,
    PayloadTooLong,
    WrongPort,
)

MAX_PAYLOAD = 31
MAX_FRAME = MAX_PAYLOAD + 1

# header byte: port in bits 7-4, link in bits 3-2, channel in bits 1-0
PORT_SHIFT = 4
LINK_SHIFT = 2
FIELD_LIMITS = {"port": 15, "link": 3, "channel": 3}

SETPOINT_FORMAT = struct.Struct("<fffH")
INSTRUCTION_FORMAT = struct.Struct("<Bffff")

_OPCODE_TO_OP = {code: op for op, code in MISSION_OPCODES.items()}


# ----------------------------------------------------------------------
# PACKETS
# ----------------------------------------------------------------------

def encode_header(port: int, link: int, channel: int) -> int:
    for name, value in (("port", port), ("link", link), ("channel", channel)):
        if not 0 <= value <= FIELD_LIMITS[name]:
            raise FieldOutOfRange(f"{name} {value} outside [0, {FIELD_LIMITS[name]}]", field=name)
    return (port << PORT_SHIFT) | (link << LINK_SHIFT) | channel


def decode_header(header: int) -> tuple:
    return (header >> PORT_SHIFT) & 0x0F, (header >> LINK_SHIFT) & 0x03, header & 0x03


def encode_packet(packet: CrtpPacket) -> bytes:
    """Serialize a packet. Fields are re-checked so unvalidated copies fail loudly."""
    if len(packet.payload) > MAX_PAYLOAD:
        raise PayloadTooLong(f"payload of {len(packet.payload)} bytes exceeds {MAX_PAYLOAD}")
    header = encode_header(packet.port, packet.link, packet.channel)
    return bytes([header]) + bytes(packet.payload)


def decode_packet(frame: bytes) -> CrtpPacket:
    if len(frame) == 0:
        raise EmptyFrame("cannot decode an empty frame")
    if len(frame) > MAX_FRAME:
        raise PayloadTooLong(f"frame of {len(frame)} bytes exceeds {MAX_FRAME}")
    port, link, channel = decode_header(frame[0])
    return CrtpPacket(port=port, link=link, channel=channel, payload=bytes(frame[1:]))


def keepalive_packet() -> CrtpPacket:
    """Link-layer null packet (header 0xFF) a radio client polls with when idle."""
    return CrtpPacket(port=CrtpPort.LINK, link=3, channel=3, payload=b"")


def is_keepalive(packet: CrtpPacket) -> bool:
    return packet.port == CrtpPort.LINK and packet.channel == 3 and not packet.payload


# ----------------------------------------------------------------------
# COMMANDER SETPOINTS
# ----------------------------------------------------------------------

def encode_setpoint(setpoint: Setpoint) -> CrtpPacket:
    payload = SETPOINT_FORMAT.pack(setpoint.roll, setpoint.pitch, setpoint.yaw, setpoint.thrust)
    return CrtpPacket(port=CrtpPort.COMMANDER, channel=0, payload=payload)


def decode_setpoint(packet: CrtpPacket) -> Setpoint:
    if packet.port != CrtpPort.COMMANDER:
        raise WrongPort(f"setpoints travel on port {int(CrtpPort.COMMANDER)}, got {packet.port}")
    if len(packet.payload) != SETPOINT_FORMAT.size:
        raise BadLength(f"setpoint payload must be {SETPOINT_FORMAT.size} bytes, got {len(packet.payload)}")
    roll, pitch, yaw, thrust = SETPOINT_FORMAT.unpack(packet.payload)
    return Setpoint(roll=roll, pitch=pitch, yaw=yaw, thrust=thrust)


# ----------------------------------------------------------------------
# HIGH-LEVEL COMMANDER (autonomous missions)
# ----------------------------------------------------------------------

def encode_instruction(instruction: MissionInstruction) -> CrtpPacket:
    payload = INSTRUCTION_FORMAT.pack(
        MISSION_OPCODES[instruction.op],
        instruction.x,
        instruction.y,
        instruction.z,
        instruction.duration,
    )
    return CrtpPacket(port=CrtpPort.HIGH_LEVEL_COMMANDER, channel=0, payload=payload)


def decode_instruction(packet: CrtpPacket, at_tick: int = 0) -> MissionInstruction:
    """Inverse of encode_instruction. The schedule tick is not on the wire."""
    if packet.port != CrtpPort.HIGH_LEVEL_COMMANDER:
        raise WrongPort(
            f"instructions travel on port {int(CrtpPort.HIGH_LEVEL_COMMANDER)}, got {packet.port}"
        )
    if len(packet.payload) != INSTRUCTION_FORMAT.size:
        raise BadLength(
            f"instruction payload must be {INSTRUCTION_FORMAT.size} bytes, got {len(packet.payload)}"
        )
    opcode, x, y, z, duration = INSTRUCTION_FORMAT.unpack(packet.payload)
    op = _OPCODE_TO_OP.get(opcode)
    if op is None:
        raise FieldOutOfRange(f"unknown mission opcode {opcode}", field="op")
    if not duration >= 0.0:
        raise FieldOutOfRange(f"mission duration {duration} is negative", field="duration")
    return MissionInstruction(op=op, at_tick=at_tick, x=x, y=y, z=z, duration=duration)


__all__ = [
    "MAX_PAYLOAD",
    "MAX_FRAME",
    "encode_header",
    "decode_header",
    "encode_packet",
    "decode_packet",
    "keepalive_packet",
    "is_keepalive",
    "encode_setpoint",
    "decode_setpoint",
    "encode_instruction",
    "decode_instruction",
]
