"""Scenario file loader: sectioned `key = value` text into a validated Scenario."""

from dataclasses import dataclass, field
import logging
from pathlib import Path
import re
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import ValidationError

from config.models.scenario_models import Scenario
from services.errors import ScenarioParseError, ScenarioValidationError

logger = logging.getLogger(__name__)

GLOBAL_SECTIONS = ("sim", "medium", "defense")
ROSTER_SECTIONS = ("drone", "gcs", "jammer", "hijacker")

SECTION_LINE = re.compile(r"\[\s*([A-Za-z_]+)\s*\]")
KEY_LINE = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*)")


@dataclass
class ParsedSection:
    name: str
    line: int
    values: Dict[str, str] = field(default_factory=dict)
    lines: Dict[str, int] = field(default_factory=dict)


def _strip_comment(text: str) -> str:
    return text.split("#", 1)[0].strip()


def parse_scenario_text(text: str) -> List[ParsedSection]:
    """Split scenario text into sections; syntax problems raise ScenarioParseError with the line."""
    sections: List[ParsedSection] = []
    seen_globals = set()

    for number, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue

        header = SECTION_LINE.fullmatch(line)
        if header:
            name = header.group(1).lower()
            if name not in GLOBAL_SECTIONS and name not in ROSTER_SECTIONS:
                raise ScenarioParseError(number, f"unknown section [{name}]")
            if name in GLOBAL_SECTIONS:
                if name in seen_globals:
                    raise ScenarioParseError(number, f"section [{name}] given twice")
                seen_globals.add(name)
            sections.append(ParsedSection(name=name, line=number))
            continue

        pair = KEY_LINE.fullmatch(line)
        if pair is None:
            raise ScenarioParseError(number, f"expected `key = value`, got {line!r}")
        if not sections:
            raise ScenarioParseError(number, "key outside of any section")
        key, value = pair.group(1).lower(), pair.group(2).strip()
        current = sections[-1]
        if key in current.values:
            raise ScenarioParseError(number, f"duplicate key {key!r} in [{current.name}]")
        current.values[key] = value
        current.lines[key] = number

    return sections


def _to_document(sections: List[ParsedSection]) -> Tuple[Dict[str, Any], Dict[tuple, int]]:
    """Build the model input plus a (location) -> line index for error reports."""
    document: Dict[str, Any] = {"roster": []}
    line_index: Dict[tuple, int] = {}
    for section in sections:
        if section.name in GLOBAL_SECTIONS:
            document[section.name] = dict(section.values)
            line_index[(section.name,)] = section.line
            for key, number in section.lines.items():
                line_index[(section.name, key)] = number
        else:
            position = len(document["roster"])
            if "role" in section.values:
                raise ScenarioParseError(section.lines["role"], "role is given by the section name")
            document["roster"].append({"role": section.name, **section.values})
            line_index[("roster", position)] = section.line
            for key, number in section.lines.items():
                line_index[("roster", position, key)] = number
    return document, line_index


def _locate(loc: Tuple[Union[str, int], ...], line_index: Dict[tuple, int]) -> Tuple[str, Optional[int]]:
    """Field name and best line number for a pydantic error location."""
    if loc and loc[0] == "roster" and len(loc) >= 2:
        # ('roster', i, <role tag>, key, ...)
        position = loc[1]
        keys = [part for part in loc[3:] if isinstance(part, str)]
        if keys:
            return keys[0], line_index.get(("roster", position, keys[0]), line_index.get(("roster", position)))
        return "roster", line_index.get(("roster", position))
    if loc and loc[0] in GLOBAL_SECTIONS:
        keys = [part for part in loc[1:] if isinstance(part, str)]
        if keys:
            return keys[0], line_index.get((loc[0], keys[0]))
        return str(loc[0]), line_index.get((loc[0],))
    return "scenario", None


def _validation_error(exc: ValidationError, line_index: Dict[tuple, int]) -> ScenarioValidationError:
    first = exc.errors()[0]
    name, line = _locate(tuple(first.get("loc", ())), line_index)
    cause = (first.get("ctx") or {}).get("error")
    # domain errors raised inside validators know their field better than the location does
    if isinstance(cause, ScenarioValidationError):
        return ScenarioValidationError(cause.field, str(cause).split(": ", 1)[-1], line)
    if getattr(cause, "field", None):
        name = cause.field
    return ScenarioValidationError(name, first.get("msg", str(exc)), line)


def load_scenario_text(text: str) -> Scenario:
    sections = parse_scenario_text(text)
    document, line_index = _to_document(sections)
    try:
        return Scenario.model_validate(document)
    except ValidationError as exc:
        raise _validation_error(exc, line_index) from exc


def load_scenario(path: Union[str, Path]) -> Scenario:
    """Read and validate a scenario file."""
    path = Path(path)
    scenario = load_scenario_text(path.read_text(encoding="utf-8"))
    logger.info(
        f"loaded scenario {path.name}: {len(scenario.drones)} drones, {len(scenario.gcs_stations)} GCS, "
        f"{len(scenario.jammers)} jammers, {len(scenario.hijackers)} hijackers"
    )
    return scenario
