"""blbc-polar cost -- per-position Bhattacharyya values of a transformation."""

from __future__ import annotations

from pathlib import Path

import typer

from blbc_polar.commands.common import console, exit_on_error, load_pair, make_channel
from blbc_polar.models import ChannelKind
from blbc_polar.reliability import info_z


def cost_command(
    code: str = typer.Option(..., "--code", "-c", help="Bundled code name, construction or generator file."),
    transformation: Path = typer.Option(..., "--transformation", "-t", help="Transformation file."),
    channel: ChannelKind = typer.Option(ChannelKind.BSC, "--channel", help="Analysis channel."),
    param: float = typer.Option(0.01, "--param", help="BSC p, BEC epsilon or BiAWGN Eb/N0 [dB]."),
) -> None:
    """Print Z at every information position and their sum."""
    with exit_on_error():
        g, t = load_pair(code, transformation)
        z = info_z(make_channel(channel, param, g), t)

    for pos, value in zip(t.info_set, z):
        console.print(f"u{pos + 1} {value:.6f}")
    console.print(f"sum {z.sum():.6f}")
