import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from config.models.core_models import DeliveryOutcome, InterferenceKind, TransceiverRole
from config.models.crtp_models import CrtpPacket, Datarate, RadioUri
from services.codec.crtp_codec import keepalive_packet
from services.errors import (
    ChannelMismatch,
    ChannelOutOfRange,
    DuplicateReceiver,
    DuplicateTransceiver,
    NotRegistered,
)
from services.medium.link_stats import LinkStats
from services.medium.radio_medium import (
    ChannelOccupancy,
    RadioMedium,
    Transceiver,
    channel_to_frequency,
    effective_snr,
    pdr_from_snr,
    spread_interference,
)

from tests.conftest import DRONE_ADDRESS, GCS_ADDRESS

DRONE = RadioUri(channel=81, datarate=Datarate.RATE_2M, address=DRONE_ADDRESS)


def radio(id: str, role: TransceiverRole, channel: int = 81, **kwargs) -> Transceiver:
    uri = DRONE.model_copy(update={"channel": channel})
    return Transceiver(id=id, uri=uri, role=role, **kwargs)


def two_radios() -> RadioMedium:
    m = RadioMedium()
    m.register(radio("cf1", TransceiverRole.DRONE))
    m.register(radio("gcs1", TransceiverRole.GCS, radio_address=GCS_ADDRESS))
    m.begin_tick(0)
    return m


@pytest.fixture
def medium():
    return two_radios()


def test_channel_frequency():
    assert channel_to_frequency(0) == 2400
    assert channel_to_frequency(81) == 2481
    assert channel_to_frequency(125) == 2525


@pytest.mark.parametrize("channel", [-1, 126])
def test_channel_frequency_range(channel):
    with pytest.raises(ChannelOutOfRange):
        channel_to_frequency(channel)


@pytest.mark.parametrize(
    "snr, expected",
    [(-100.0, 0.0), (5.0, 0.0), (10.0, 0.5), (15.0, 1.0), (40.0, 1.0)],
)
def test_pdr_ramp(snr, expected):
    assert pdr_from_snr(snr) == pytest.approx(expected)


@given(st.floats(-50, 50), st.floats(-50, 50))
def test_pdr_is_monotone(a, b):
    low, high = sorted((a, b))
    assert 0.0 <= pdr_from_snr(low) <= pdr_from_snr(high) <= 1.0


def test_clear_channel_snr():
    occupancy = ChannelOccupancy(channel=81)
    gcs, drone = radio("g", TransceiverRole.GCS), radio("d", TransceiverRole.DRONE)
    assert effective_snr(gcs, drone, occupancy) == pytest.approx(30.0)


def test_jammed_snr():
    occupancy = ChannelOccupancy(channel=81)
    occupancy.add(1.0, InterferenceKind.GAUSSIAN)
    gcs, drone = radio("g", TransceiverRole.GCS), radio("d", TransceiverRole.DRONE)
    assert effective_snr(gcs, drone, occupancy) == pytest.approx(-0.0043, abs=1e-3)


def test_snr_channel_mismatch():
    with pytest.raises(ChannelMismatch):
        effective_snr(
            radio("g", TransceiverRole.GCS, channel=80),
            radio("d", TransceiverRole.DRONE),
            ChannelOccupancy(channel=81),
        )


def test_negative_interference():
    with pytest.raises(ValueError):
        ChannelOccupancy(channel=1).add(-1.0, InterferenceKind.CW)


def test_gaussian_leaks_into_neighbours():
    spread = dict(spread_interference(81, 1.0, InterferenceKind.GAUSSIAN))
    assert spread == pytest.approx({81: 1.0, 80: 0.01, 82: 0.01})


def test_cw_stays_on_channel():
    assert spread_interference(81, 2.0, InterferenceKind.CW) == [(81, 2.0)]


def test_band_edge_leakage_is_clipped():
    assert [ch for ch, _ in spread_interference(0, 1.0, InterferenceKind.GAUSSIAN)] == [0, 1]


def test_clear_delivery(medium):
    result = medium.transmit_frame("gcs1", DRONE_ADDRESS, keepalive_packet(), 0.999)
    assert result.outcome == DeliveryOutcome.DELIVERED
    assert result.receiver_id == "cf1"
    assert result.snr_db == pytest.approx(30.0)


def test_clear_channel_delivers_every_frame(medium):
    draws = np.random.default_rng(17).random(10_000)
    assert all(medium.transmit_frame("gcs1", DRONE_ADDRESS, keepalive_packet(), draw).delivered for draw in draws)


@settings(max_examples=50)
@given(st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=2, max_size=8))
def test_delivery_never_rises_with_interference(powers):
    draws = np.random.default_rng(19).random(200)
    delivered = []
    for power in sorted(powers):
        m = two_radios()
        m.add_interference(81, power, InterferenceKind.GAUSSIAN)
        delivered.append(sum(m.transmit_frame("gcs1", DRONE_ADDRESS, keepalive_packet(), d).delivered for d in draws))
    assert delivered == sorted(delivered, reverse=True)


def test_jammed_delivery_always_lost(medium):
    medium.add_interference(81, 1.0, InterferenceKind.GAUSSIAN)
    result = medium.transmit_frame("gcs1", DRONE_ADDRESS, keepalive_packet(), 0.0)
    assert not result.delivered


def test_interference_is_per_tick(medium):
    medium.add_interference(81, 1.0, InterferenceKind.CW)
    medium.begin_tick(1)
    assert medium.occupancy(81).interferer_power == 0.0
    assert medium.transmit_frame("gcs1", DRONE_ADDRESS, keepalive_packet(), 0.5).delivered


def test_unknown_address_is_lost(medium):
    result = medium.transmit_frame("gcs1", bytes.fromhex("0202020202"), keepalive_packet(), 0.0)
    assert result.outcome == DeliveryOutcome.LOST
    assert result.receiver_id is None
    assert result.snr_db is None


def test_wrong_rate_is_lost(medium):
    medium.retune("gcs1", datarate=Datarate.RATE_1M)
    assert not medium.transmit_frame("gcs1", DRONE_ADDRESS, keepalive_packet(), 0.0).delivered


def test_retune_follows_drone(medium):
    medium.retune("cf1", channel=10)
    medium.retune("gcs1", channel=10)
    assert medium.transmit_frame("gcs1", DRONE_ADDRESS, keepalive_packet(), 0.0).delivered
    assert medium.transceiver("cf1").uri.channel == 10


def test_retune_out_of_band(medium):
    with pytest.raises(ChannelOutOfRange):
        medium.retune("gcs1", channel=126)


def test_duplicate_receiver_rejected(medium):
    with pytest.raises(DuplicateReceiver):
        medium.register(radio("cf2", TransceiverRole.DRONE))


def test_failed_retune_keeps_cell(medium):
    medium.register(radio("cf2", TransceiverRole.DRONE, channel=82))
    with pytest.raises(DuplicateReceiver):
        medium.retune("cf2", channel=81)
    assert medium.transceiver("cf2").uri.channel == 82
    assert medium.transmit_frame("gcs1", DRONE_ADDRESS, keepalive_packet(), 0.0).receiver_id == "cf1"


def test_duplicate_id(medium):
    with pytest.raises(DuplicateTransceiver):
        medium.register(radio("gcs1", TransceiverRole.GCS))


def test_unknown_transceiver(medium):
    with pytest.raises(NotRegistered):
        medium.transceiver("nobody")


def test_deactivated_drone_stops_answering(medium):
    medium.deactivate("cf1")
    assert not medium.transmit_frame("gcs1", DRONE_ADDRESS, keepalive_packet(), 0.0).delivered
    assert not medium.transceiver("cf1").active


def test_air_log_records_frames(medium):
    packet = CrtpPacket(port=3, payload=b"\x00" * 14)
    medium.transmit_frame("gcs1", DRONE_ADDRESS, packet, 0.0)
    medium.begin_tick(1)
    medium.transmit_frame("gcs1", DRONE_ADDRESS, keepalive_packet(), 0.0)

    first = medium.frames_at(0)[0]
    assert (first.channel, first.datarate, first.address) == (81, Datarate.RATE_2M, DRONE_ADDRESS)
    assert first.payload_length == 14
    assert first.port == 3
    assert first.acked
    assert len(medium.frames_between(0, 2)) == 2
    assert medium.frames_between(1, 2)[0].payload_length == 0


def test_air_log_retention():
    m = RadioMedium()
    m.params = m.params.model_copy(update={"air_log_retention": 10})
    m.register(radio("gcs1", TransceiverRole.GCS))
    for tick in range(30):
        m.begin_tick(tick)
        m.transmit_frame("gcs1", DRONE_ADDRESS, keepalive_packet(), 0.0)
    assert m.frames_at(5) == []
    assert len(m.frames_between(0, 30)) == 11


def test_link_stats(medium):
    for tick in range(4):
        medium.begin_tick(tick)
        if tick >= 2:
            medium.add_interference(81, 1.0, InterferenceKind.GAUSSIAN)
        medium.transmit_frame("gcs1", DRONE_ADDRESS, keepalive_packet(), 0.5)
    stats = medium.link_stats("gcs1", DRONE_ADDRESS)
    assert (stats.frames_sent, stats.frames_acked, stats.frames_lost) == (4, 2, 2)
    assert stats.pdr == 0.5
    assert medium.all_link_stats()[0][:2] == ("gcs1", "01E7E7E7E7")


def test_link_stats_window():
    stats = LinkStats(capacity=4)
    for delivered in (True, True, False, False, False, True):
        stats.record(0, delivered)
    assert stats.frames_sent == 6
    assert list(stats.per_window) == [False, False, False, True]
    assert stats.recent_per(4) == 0.75
    assert stats.recent_per(2) == 0.5


def test_fresh_link_stats():
    stats = LinkStats()
    assert stats.pdr == 1.0
    assert stats.recent_per(10) == 0.0
    with pytest.raises(ValueError):
        LinkStats(capacity=0)
