"""Text rendering of trace records: tab-separated tick, entity, kind, then key=value pairs."""

from enum import Enum
import math
from typing import Any, Dict, Tuple

from config.models.core_models import TraceEvent
from config.models.crtp_models import Setpoint
from services.codec.uri import format_address


def format_value(value: Any) -> str:
    """Canonical text for a trace value; the same value always renders the same way."""
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, bytes):
        return format_address(value) if len(value) == 5 else value.hex().upper()
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.6g}"
    if isinstance(value, Setpoint):
        return value.describe()
    return str(value).replace("\t", " ").replace("\n", " ")


def format_trace_line(event: TraceEvent) -> str:
    fields = [str(event.tick), format_value(event.entity), event.kind.value]
    fields.extend(f"{key}={format_value(value)}" for key, value in event.details.items())
    return "\t".join(fields)


def parse_trace_line(line: str) -> Tuple[int, str, str, Dict[str, str]]:
    """Inverse of format_trace_line, with every detail value left as text."""
    parts = line.rstrip("\n").split("\t")
    if len(parts) < 3:
        raise ValueError(f"trace line needs tick, entity and kind: {line!r}")
    details: Dict[str, str] = {}
    for item in parts[3:]:
        key, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"trace detail {item!r} is not key=value")
        details[key] = value
    return int(parts[0]), parts[1], parts[2], details
