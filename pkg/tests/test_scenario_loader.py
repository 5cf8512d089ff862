import pytest

from config.models.core_models import FlightMode, SafeModeAction
from config.models.crtp_models import Datarate, MissionOp
from services.engine.scenario_loader import load_scenario, parse_scenario_text
from services.errors import ScenarioParseError, ScenarioValidationError

from tests.conftest import DRONE_URI, SHIPPED_SCENARIOS, build_scenario, scenario_path, shipped


def test_sections_keep_file_order():
    sections = parse_scenario_text("[sim]\nduration = 5\n\n[drone]\nid = a # trailing\n[drone]\nid = b\n")
    assert [(s.name, s.line) for s in sections] == [("sim", 1), ("drone", 4), ("drone", 6)]
    assert sections[1].values == {"id": "a"}
    assert sections[1].lines == {"id": 5}


def test_roster_order_and_defaults(manual_link_text):
    scenario = build_scenario(manual_link_text)
    assert [entry.id for entry in scenario.roster] == ["cf1", "gcs1"]
    assert scenario.sim.duration == 300
    assert scenario.sim.seed == 3
    drone = scenario.drones[0]
    assert drone.mode == FlightMode.NON_AUTONOMOUS
    assert drone.loss_timeout == 200
    assert drone.uri.datarate == Datarate.RATE_2M
    assert scenario.gcs_stations[0].ack_timeout == 50
    assert scenario.medium.noise_floor_db == -30.0


def test_value_formats():
    scenario = build_scenario(f"""
    [sim]
    scan_datarates = 2M, 250K

    [defense]
    hopping = true
    hop_set = 1, 9, 17
    hop_seed = 4

    [drone]
    id = cf1
    uri = {DRONE_URI}
    mode = autonomous
    safe_mode_actions = emergency_landing, send_location

    [gcs]
    id = gcs1
    link = {DRONE_URI}
    radio_address = 0A:0A:0A:0A:0B
    setpoint = 1.5, -2, 0, 42000
    mission = takeoff@0:0:0:1:2, land@90
    """)
    assert scenario.sim.scan_datarates == [Datarate.RATE_2M, Datarate.RATE_250K]
    assert scenario.hop_schedule().hop_set == [1, 9, 17]
    assert scenario.hop_schedule().seed == 4
    assert scenario.drones[0].safe_mode_actions == [SafeModeAction.EMERGENCY_LANDING, SafeModeAction.SEND_LOCATION]
    gcs = scenario.gcs_stations[0]
    assert gcs.radio_address == bytes.fromhex("0A0A0A0A0B")
    assert gcs.setpoint.thrust == 42000
    assert gcs.setpoint.roll == 1.5
    assert [(m.op, m.at_tick) for m in gcs.mission] == [(MissionOp.TAKEOFF, 0), (MissionOp.LAND, 90)]
    assert gcs.mission[0].duration == 2.0


def test_hop_seed_defaults_to_run_seed():
    scenario = build_scenario("""
    [sim]
    seed = 9
    [defense]
    hopping = true
    """)
    assert scenario.hop_schedule().seed == 9


@pytest.mark.parametrize(
    "text, line",
    [
        ("[sim]\nduration = 5\n[bogus]\n", 3),
        ("duration = 5\n", 1),
        ("[sim]\nduration 5\n", 2),
        ("[sim]\nseed = 1\n[sim]\n", 3),
        ("[drone]\nid = a\nid = b\n", 3),
        ("[drone]\nrole = gcs\n", 2),
    ],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ScenarioParseError) as info:
        build_scenario(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_channel_out_of_band():
    with pytest.raises(ScenarioValidationError) as info:
        build_scenario("""
        [drone]
        id = cf1
        uri = radio://0/126/2M/01E7E7E7E7
        """)
    assert info.value.field == "channel"
    assert info.value.line == 4


def test_duplicate_drone_uri():
    with pytest.raises(ScenarioValidationError) as info:
        build_scenario(f"""
        [drone]
        id = cf1
        uri = {DRONE_URI}
        [drone]
        id = cf2
        uri = {DRONE_URI}
        """)
    assert info.value.field == "uri"


def test_same_cell_on_another_dongle_is_a_duplicate():
    with pytest.raises(ScenarioValidationError) as info:
        build_scenario("""
        [drone]
        id = cf1
        uri = radio://0/81/2M/01E7E7E7E7
        [drone]
        id = cf2
        uri = radio://1/81/2M/01E7E7E7E7
        """)
    assert info.value.field == "uri"


def test_hopping_needs_distinct_addresses():
    text = """
    [defense]
    hopping = true
    [drone]
    id = cf1
    uri = radio://0/81/2M/01E7E7E7E7
    [drone]
    id = cf2
    uri = radio://0/90/2M/01E7E7E7E7
    """
    assert len(build_scenario(text.replace("hopping = true", "hopping = false")).drones) == 2
    with pytest.raises(ScenarioValidationError) as info:
        build_scenario(text)
    assert info.value.field == "uri"


@pytest.mark.parametrize("bad_id", ["cf 1", "cf\t1", "cf=1"])
def test_entity_ids_are_plain_tokens(bad_id):
    with pytest.raises(ScenarioValidationError) as info:
        build_scenario(f"""
        [drone]
        id = {bad_id}
        uri = {DRONE_URI}
        """)
    assert info.value.field == "id"
    assert info.value.line == 3


def test_unknown_key():
    with pytest.raises(ScenarioValidationError) as info:
        build_scenario(f"""
        [drone]
        id = cf1
        uri = {DRONE_URI}
        colour = red
        """)
    assert info.value.field == "colour"
    assert info.value.line == 5


@pytest.mark.parametrize(
    "extra, field",
    [
        ("[gcs]\nid = g\nlink = radio://0/82/2M/01E7E7E7E7", "link"),
        ("[gcs]\nid = cf1\nlink = " + DRONE_URI, "id"),
        ("[gcs]\nid = g\nlink = " + DRONE_URI + "\nradio_address = 01E7E7E7E7", "radio_address"),
        ("[hijacker]\nid = h\ntarget_address = 0909090909", "target_address"),
        ("[medium]\ntheta_low_db = 20", "medium"),
        ("[defense]\nhopping = true\nhop_set = 5", "hop_set"),
        ("[drone]\nid = cf2\nuri = radio://0/80/3M/01E7E7E7E7", "datarate"),
    ],
)
def test_cross_checks(extra, field):
    text = f"[drone]\nid = cf1\nuri = {DRONE_URI}\n{extra}\n"
    with pytest.raises(ScenarioValidationError) as info:
        build_scenario(text)
    assert info.value.field == field


def test_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_scenario(tmp_path / "absent.toy")


def test_load_from_file(scenario_file, manual_link_text):
    scenario = load_scenario(scenario_file(manual_link_text))
    assert len(scenario.drones) == 1


def test_scan_scenario_declares_three_links():
    scenario = shipped("three_link_scan.toy")
    assert [d.uri.channel for d in scenario.drones] == [81, 82, 83]
    assert len(scenario.gcs_stations) == 3


@pytest.mark.parametrize("name", SHIPPED_SCENARIOS)
def test_shipped_scenarios_load(name):
    assert load_scenario(scenario_path(name)).roster
