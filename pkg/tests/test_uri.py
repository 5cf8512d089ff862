import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from config.models.crtp_models import Datarate, RadioUri
from services.codec.uri import format_address, format_uri, parse_address, parse_uri
from services.errors import BadAddress, ChannelOutOfRange, MalformedUri, UnknownDatarate

uris = st.builds(
    RadioUri,
    index=st.integers(0, 9),
    channel=st.integers(0, 125),
    datarate=st.sampled_from(list(Datarate)),
    address=st.binary(min_size=5, max_size=5),
)


@settings(max_examples=1000)
@given(uris)
def test_uri_round_trip(uri):
    assert parse_uri(format_uri(uri)) == uri


def test_parse_reference_uri():
    uri = parse_uri("radio://0/81/2M/01E7E7E7E7")
    assert uri.channel == 81
    assert uri.datarate == Datarate.RATE_2M
    assert uri.address == bytes.fromhex("01E7E7E7E7")
    assert format_uri(uri) == "radio://0/81/2M/01E7E7E7E7"


def test_colon_address_form():
    assert parse_address("01:E7:E7:E7:E7") == bytes.fromhex("01E7E7E7E7")
    assert format_address(bytes.fromhex("01E7E7E7E7"), ":") == "01:E7:E7:E7:E7"


def test_lowercase_address_formats_uppercase():
    uri = parse_uri("radio://0/10/250K/e7e7e7e7e7")
    assert str(uri).endswith("/E7E7E7E7E7")


@pytest.mark.parametrize("text,error", [
    ("radio://0/126/2M/E7E7E7E7E7", ChannelOutOfRange),
    ("radio://0/81/3M/E7E7E7E7E7", UnknownDatarate),
    ("radio://0/81/2M/E7E7E7E7", BadAddress),
    ("radio://0/81/2M/ZZE7E7E7E7", BadAddress),
    ("usb://0/81/2M/E7E7E7E7E7", MalformedUri),
    ("radio://0/81/2M", MalformedUri),
    ("radio://0/81/2M/E7E7E7E7E7\n", MalformedUri),
])
def test_malformed_uris(text, error):
    with pytest.raises(error):
        parse_uri(text)


def test_channel_error_names_field():
    with pytest.raises(ChannelOutOfRange) as excinfo:
        parse_uri("radio://0/126/2M/E7E7E7E7E7")
    assert excinfo.value.field == "channel"


@given(st.text(max_size=40))
def test_fuzzed_text_never_crashes(text):
    try:
        parse_uri(text)
    except MalformedUri:
        pass
    except (ChannelOutOfRange, UnknownDatarate, BadAddress):
        pass


@settings(max_examples=1000)
@given(uris, st.data())
def test_single_character_corruption_rejected(uri, data):
    text = format_uri(uri)
    position = data.draw(st.integers(0, len(text) - 1))
    replacement = data.draw(st.sampled_from("?Z# "))
    corrupted = text[:position] + replacement + text[position + 1:]
    with pytest.raises((MalformedUri, ChannelOutOfRange, UnknownDatarate, BadAddress)):
        parse_uri(corrupted)
