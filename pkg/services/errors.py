"""Exception hierarchy for the simulator."""

from typing import Optional


class CrtpSimError(Exception):
    """Base class for every simulator error."""


# ----------------------------------------------------------------------
# CODEC
# ----------------------------------------------------------------------

class CodecError(CrtpSimError, ValueError):
    """Invalid wire data or URI text. `field` names the offending field."""

    field = "packet"

    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(message)
        if field is not None:
            self.field = field


class PayloadTooLong(CodecError):
    field = "payload"


class FieldOutOfRange(CodecError):
    pass


class EmptyFrame(CodecError):
    field = "frame"


class MalformedUri(CodecError):
    field = "uri"


class ChannelOutOfRange(CodecError):
    field = "channel"


class UnknownDatarate(CodecError):
    field = "datarate"


class BadAddress(CodecError):
    field = "address"


class WrongPort(CodecError):
    field = "port"


class BadLength(CodecError):
    field = "payload"


# ----------------------------------------------------------------------
# SIGNALS
# ----------------------------------------------------------------------

class SignalError(CrtpSimError, ValueError):
    pass


class AliasedFrequency(SignalError):
    pass


class LengthMismatch(SignalError):
    pass


class RateMismatch(SignalError):
    pass


class BadBand(SignalError):
    pass


class TooFewSamples(SignalError):
    pass


class BadFftSize(SignalError):
    pass


# ----------------------------------------------------------------------
# MEDIUM
# ----------------------------------------------------------------------

class MediumError(CrtpSimError):
    pass


class ChannelMismatch(MediumError):
    pass


class NotRegistered(MediumError):
    pass


class DuplicateTransceiver(MediumError):
    pass


class DuplicateReceiver(MediumError):
    """Two active drones would answer the same (channel, datarate, address)."""


# ----------------------------------------------------------------------
# AGENTS
# ----------------------------------------------------------------------

class NoTargetFound(CrtpSimError):
    pass


# ----------------------------------------------------------------------
# SCENARIOS / OUTPUT
# ----------------------------------------------------------------------

class ScenarioError(CrtpSimError):
    pass


class ScenarioParseError(ScenarioError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ScenarioValidationError(ScenarioError, ValueError):
    def __init__(self, field: str, message: str, line: Optional[int] = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}invalid {field}: {message}")
        self.field = field
        self.line = line


class OutputError(CrtpSimError, OSError):
    pass
