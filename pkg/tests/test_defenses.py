from collections import Counter

import pytest
from hypothesis import given
import hypothesis.strategies as st

from config.models.core_models import DroneState, FlightMode, FlightStatus, HopSchedule, LandingReason
from services.defenses import JamDetector, channel_at_tick, detect_jamming, next_hop_channel, safe_mode_policy
from services.medium.link_stats import LinkStats

HOP_SET = [1, 9, 17, 25, 33, 41, 49, 57, 65, 73, 81, 89, 97, 105, 113, 121]


def schedule(seed: int = 7, epoch_length: int = 5) -> HopSchedule:
    return HopSchedule(hop_set=HOP_SET, epoch_length=epoch_length, seed=seed)


# ----------------------------------------------------------------------
# hopping
# ----------------------------------------------------------------------

@given(st.integers(0, 2**32 - 1), st.integers(0, 10**6))
def test_both_ends_agree(seed, epoch):
    a = HopSchedule(hop_set=HOP_SET, seed=seed)
    b = HopSchedule(hop_set=list(HOP_SET), seed=seed)
    assert next_hop_channel(a, epoch) == next_hop_channel(b, epoch)
    assert next_hop_channel(a, epoch) in HOP_SET


def test_channel_constant_within_epoch():
    s = schedule(epoch_length=5)
    assert len({channel_at_tick(s, t) for t in range(10, 15)}) == 1
    assert channel_at_tick(s, 12) == next_hop_channel(s, 2)


def test_hops_cover_set_evenly():
    counts = Counter(next_hop_channel(schedule(), e) for e in range(16000))
    assert set(counts) == set(HOP_SET)
    assert all(800 <= n <= 1200 for n in counts.values())


def test_seed_changes_sequence():
    first = [next_hop_channel(schedule(1), e) for e in range(50)]
    second = [next_hop_channel(schedule(2), e) for e in range(50)]
    assert first != second


def test_negative_epoch():
    with pytest.raises(ValueError):
        next_hop_channel(schedule(), -1)


@pytest.mark.parametrize("hop_set", [[5], [5, 5], [1, 126]])
def test_bad_hop_set(hop_set):
    with pytest.raises(ValueError):
        HopSchedule(hop_set=hop_set)


# ----------------------------------------------------------------------
# safe mode
# ----------------------------------------------------------------------

def drone(status: FlightStatus, safe_mode: bool = True) -> DroneState:
    return DroneState(mode=FlightMode.AUTONOMOUS, status=status, safe_mode=safe_mode, land_duration=100)


@pytest.mark.parametrize("status", [FlightStatus.FLYING, FlightStatus.SUSPENDED])
def test_link_loss_starts_landing(status):
    landed = safe_mode_policy(drone(status), link_lost=True)
    assert landed.status == FlightStatus.LANDING
    assert landed.land_remaining == 100
    assert landed.landing_reason == LandingReason.SAFE_MODE


def test_no_loss_no_change():
    state = drone(FlightStatus.FLYING)
    assert safe_mode_policy(state, link_lost=False) == state


def test_disabled_safe_mode_is_inert():
    state = drone(FlightStatus.FLYING, safe_mode=False)
    assert safe_mode_policy(state, link_lost=True) == state


@pytest.mark.parametrize("status", [FlightStatus.IDLE, FlightStatus.LANDED, FlightStatus.CRASHED, FlightStatus.LANDING])
def test_grounded_drone_unchanged(status):
    state = drone(status)
    assert safe_mode_policy(state, link_lost=True) == state


# ----------------------------------------------------------------------
# jam detection
# ----------------------------------------------------------------------

def stats_from(outcomes, capacity: int = 100) -> LinkStats:
    stats = LinkStats(capacity=capacity)
    for tick, delivered in enumerate(outcomes):
        stats.record(tick, delivered)
    return stats


def test_alert_at_threshold():
    alert = detect_jamming(stats_from([True] * 50 + [False] * 50), window=100, threshold=0.5)
    assert alert is not None
    assert alert.per == 0.5
    assert alert.tick == 99


def test_below_threshold():
    assert detect_jamming(stats_from([True] * 51 + [False] * 49), window=100, threshold=0.5) is None


def test_needs_full_window():
    assert detect_jamming(stats_from([False] * 99), window=100, threshold=0.5) is None


@given(
    st.lists(st.booleans(), min_size=20, max_size=100),
    st.sets(st.integers(0, 99)),
    st.floats(min_value=0.05, max_value=1.0),
)
def test_more_losses_never_clear_an_alert(outcomes, flips, threshold):
    worse = [delivered and i not in flips for i, delivered in enumerate(outcomes)]
    window = len(outcomes)
    before = detect_jamming(stats_from(outcomes), window, threshold)
    after = detect_jamming(stats_from(worse), window, threshold)
    if before is not None:
        assert after is not None
        assert after.per >= before.per


def test_window_beyond_capacity():
    with pytest.raises(ValueError):
        detect_jamming(stats_from([False] * 10, capacity=10), window=11, threshold=0.5)


def test_detector_reports_rising_edge_only():
    detector = JamDetector("gcs1", window=10, threshold=0.5)
    stats = LinkStats(capacity=10)
    raised = []
    for tick, delivered in enumerate([True] * 10 + [False] * 20 + [True] * 20 + [False] * 10):
        stats.record(tick, delivered)
        alert = detector.update(stats)
        if alert is not None:
            raised.append(alert)
    assert [a.tick for a in raised] == [14, 54]
    assert all(a.link == "gcs1" for a in raised)
