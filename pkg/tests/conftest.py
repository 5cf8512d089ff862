"""Shared fixtures: shipped scenario paths and small scenario builders."""

from pathlib import Path
import textwrap

import pytest

from services.engine.scenario_loader import load_scenario, load_scenario_text

ROOT = Path(__file__).resolve().parent.parent
SCENARIO_DIR = ROOT / "scenarios"
SHIPPED_SCENARIOS = sorted(p.name for p in SCENARIO_DIR.glob("*.toy"))

DRONE_URI = "radio://0/81/2M/01E7E7E7E7"
GCS_ADDRESS = bytes.fromhex("0A0A0A0A0A")
HIJACKER_ADDRESS = bytes.fromhex("0B0B0B0B0B")
DRONE_ADDRESS = bytes.fromhex("01E7E7E7E7")


def scenario_path(name: str) -> Path:
    return SCENARIO_DIR / name


def shipped(name: str):
    return load_scenario(scenario_path(name))


def build_scenario(text: str):
    return load_scenario_text(textwrap.dedent(text))


@pytest.fixture
def scenario_file(tmp_path):
    """Write scenario text to a temporary file and return its path."""

    def write(text: str, name: str = "scenario.toy") -> Path:
        path = tmp_path / name
        path.write_text(textwrap.dedent(text), encoding="utf-8")
        return path

    return write


@pytest.fixture
def manual_link_text():
    return f"""
    [sim]
    duration = 300
    seed = 3

    [drone]
    id = cf1
    uri = {DRONE_URI}

    [gcs]
    id = gcs1
    link = {DRONE_URI}
    """
