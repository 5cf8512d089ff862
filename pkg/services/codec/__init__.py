from .crtp_codec import (
    decode_instruction,
    decode_packet,
    decode_setpoint,
    encode_instruction,
    encode_packet,
    encode_setpoint,
    is_keepalive,
    keepalive_packet,
)
from .uri import format_address, format_uri, parse_address, parse_uri

__all__ = [
    "decode_instruction",
    "decode_packet",
    "decode_setpoint",
    "encode_instruction",
    "encode_packet",
    "encode_setpoint",
    "is_keepalive",
    "keepalive_packet",
    "format_address",
    "format_uri",
    "parse_address",
    "parse_uri",
]
