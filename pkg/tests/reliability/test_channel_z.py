"""Tests for channel_z and ChannelParam validation."""

import math

import pytest

from blbc_polar.errors import ParamOutOfRange
from blbc_polar.reliability import ChannelParam, channel_z
from tests.conftest import BSC_001_Z


@pytest.mark.parametrize(
    ("channel", "expected"),
    [
        (ChannelParam.bsc(0.01), BSC_001_Z),
        (ChannelParam.bsc(0.0), 0.0),
        (ChannelParam.bsc(0.5), 1.0),
        (ChannelParam.bec(0.3), 0.3),
        (ChannelParam.biawgn(0.0, 0.5), math.exp(-0.5)),
        (ChannelParam.biawgn(10.0, 0.25), math.exp(-2.5)),
    ],
)
def test_channel_z_values(channel: ChannelParam, expected: float) -> None:
    assert channel_z(channel) == pytest.approx(expected, abs=1e-6)


@pytest.mark.parametrize(
    "build",
    [
        lambda: ChannelParam.bsc(0.6),
        lambda: ChannelParam.bsc(-0.1),
        lambda: ChannelParam.bec(1.5),
        lambda: ChannelParam.biawgn(1.0, 0.0),
        lambda: ChannelParam.biawgn(float("inf"), 0.5),
    ],
)
def test_channel_param_out_of_range(build) -> None:
    with pytest.raises(ParamOutOfRange):
        build()


def test_channel_param_str() -> None:
    assert str(ChannelParam.bsc(0.01)) == "bsc(0.01)"
    assert str(ChannelParam.biawgn(2.0, 0.5)).startswith("biawgn(ebno_db=2.0")
