"""blbc-polar exhaustive -- global cost minimum for tiny instances."""

from __future__ import annotations

from pathlib import Path
from typing import Optional

import typer

from blbc_polar.commands.common import console, exit_on_error, make_channel, setup_logger
from blbc_polar.formats import write_transformation
from blbc_polar.models import ChannelKind, ExhaustiveScope
from blbc_polar.reliability import info_z
from blbc_polar.resources import load_code, load_permutation
from blbc_polar.search import ExhaustiveSearcher


def exhaustive_command(
    code: str = typer.Option(..., "--code", "-c", help="Bundled code name, construction or generator file."),
    n_big: int = typer.Option(..., "--n-big", "-N", help="Polar block length N."),
    scope: ExhaustiveScope = typer.Option(ExhaustiveScope.FULL, "--scope", help="What to enumerate."),
    channel: ChannelKind = typer.Option(ChannelKind.BSC, "--channel", help="Analysis channel."),
    param: float = typer.Option(0.01, "--param", help="BSC p, BEC epsilon or BiAWGN Eb/N0 [dB]."),
    fixed_perm: Optional[str] = typer.Option(None, "--fixed-perm", help="Permutation for pruning-only scope."),
    workers: int = typer.Option(1, "--workers", "-j", help="Worker processes."),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write the minimiser here."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log progress to stderr."),
    log_file: bool = typer.Option(False, "--log-file", help="Also log to $LOG_ROOT/blbc_polar.log."),
) -> None:
    """Enumerate every candidate in the scope and report the minimum cost."""
    logger = setup_logger(verbose, log_file)
    with exit_on_error():
        g = load_code(code)
        chan = make_channel(channel, param, g)
        searcher = ExhaustiveSearcher(
            logger,
            g,
            n_big,
            chan,
            scope,
            fixed_perm=load_permutation(fixed_perm) if fixed_perm else None,
            workers=workers,
        )
        result = searcher.run()
        if output is not None:
            write_transformation(output, result.transformation)
        z = info_z(chan, result.transformation)

    console.print(f"candidates {result.candidates}")
    console.print("components " + " ".join(f"{v:.6f}" for v in z))
    console.print(f"min_cost {result.min_cost:.6f}")
