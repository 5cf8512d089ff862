"""Radio URI and address text forms."""

import re

from config.models.crtp_models import Datarate, RadioUri, UriMedium
from services.errors import BadAddress, ChannelOutOfRange, MalformedUri, UnknownDatarate

MAX_CHANNEL = 125
ADDRESS_BYTES = 5
DEFAULT_ADDRESS = bytes.fromhex("E7E7E7E7E7")

URI_PATTERN = re.compile(r"^(radio|serial)://([0-9]+)/([0-9]+)/([^/]+)/([^/]+)$")
HEX_ADDRESS = re.compile(r"^[0-9A-Fa-f]{10}$")
COLON_ADDRESS = re.compile(r"^[0-9A-Fa-f]{2}(?::[0-9A-Fa-f]{2}){4}$")


def parse_address(text: str) -> bytes:
    """Accepts `01E7E7E7E7` or `01:E7:E7:E7:E7`."""
    if HEX_ADDRESS.fullmatch(text):
        return bytes.fromhex(text)
    if COLON_ADDRESS.fullmatch(text):
        return bytes.fromhex(text.replace(":", ""))
    raise BadAddress(f"address {text!r} is not 5 hex bytes")


def format_address(address: bytes, sep: str = "") -> str:
    if len(address) != ADDRESS_BYTES:
        raise BadAddress(f"address must be {ADDRESS_BYTES} bytes, got {len(address)}")
    return sep.join(f"{b:02X}" for b in address)


def parse_channel(text: str) -> int:
    channel = int(text)
    if not 0 <= channel <= MAX_CHANNEL:
        raise ChannelOutOfRange(f"channel {channel} outside [0, {MAX_CHANNEL}]")
    return channel


def parse_datarate(text: str) -> Datarate:
    try:
        return Datarate(text)
    except ValueError:
        raise UnknownDatarate(f"unknown datarate {text!r}") from None


def parse_uri(text: str) -> RadioUri:
    match = URI_PATTERN.fullmatch(text)
    if match is None:
        raise MalformedUri(f"{text!r} does not match <medium>://<index>/<channel>/<rate>/<address>")
    medium, index, channel, rate, address = match.groups()
    return RadioUri(
        medium=UriMedium(medium),
        index=int(index),
        channel=parse_channel(channel),
        datarate=parse_datarate(rate),
        address=parse_address(address),
    )


def format_uri(uri: RadioUri) -> str:
    return (
        f"{uri.medium.value}://{uri.index}/{uri.channel}/"
        f"{uri.datarate.value}/{format_address(uri.address)}"
    )
