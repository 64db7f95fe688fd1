"""blbc-polar search -- simulated annealing over (R, P), writes a transformation file."""

from __future__ import annotations

from pathlib import Path
from typing import Optional

import typer

from blbc_polar.commands.common import (
    console,
    exit_on_error,
    make_channel,
    setup_logger,
)
from blbc_polar.config import load_anneal_config, with_overrides
from blbc_polar.formats import write_trace_csv, write_transformation
from blbc_polar.models import AnnealConfig, ChannelKind, MovePolicy
from blbc_polar.resources import load_code, load_permutation
from blbc_polar.search import run_chains


def search_command(
    code: str = typer.Option(..., "--code", "-c", help="Bundled code name, construction or generator file."),
    n_big: int = typer.Option(..., "--n-big", "-N", help="Polar block length N (power of two, >= n)."),
    channel: ChannelKind = typer.Option(ChannelKind.BSC, "--channel", help="Analysis channel."),
    param: float = typer.Option(0.01, "--param", help="BSC p, BEC epsilon or BiAWGN Eb/N0 [dB]."),
    config: Optional[Path] = typer.Option(None, "--config", help="YAML file with AnnealConfig fields."),
    t_max: Optional[int] = typer.Option(None, "--t-max", help="Iterations per chain."),
    gamma: Optional[float] = typer.Option(None, "--gamma", help="Cooling factor in (0, 1)."),
    t_init: Optional[float] = typer.Option(None, "--t-init", help="Initial temperature."),
    policy: Optional[MovePolicy] = typer.Option(None, "--policy", help="Move policy."),
    seed: Optional[int] = typer.Option(
        None, "--seed", help="Seed of the first chain (default: seed from --config, else 0)."
    ),
    chains: int = typer.Option(1, "--chains", help="Independent chains with seeds seed, seed+1, ..."),
    workers: int = typer.Option(1, "--workers", "-j", help="Worker processes."),
    fixed_perm: Optional[str] = typer.Option(
        None, "--fixed-perm", help="Keep this permutation (bundled name or file) and search R only."
    ),
    output: Path = typer.Option(..., "--output", "-o", help="Transformation file to write."),
    trace: Optional[Path] = typer.Option(None, "--trace", help="Cost-trace CSV of the best chain."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log progress to stderr."),
    log_file: bool = typer.Option(False, "--log-file", help="Also log to $LOG_ROOT/blbc_polar.log."),
) -> None:
    """Search for a low-cost transformation with simulated annealing."""
    logger = setup_logger(verbose, log_file)
    with exit_on_error():
        initial_perm = load_permutation(fixed_perm) if fixed_perm else None
        cfg = with_overrides(
            load_anneal_config(config) if config else AnnealConfig(),
            t_max=t_max,
            gamma=gamma,
            t_init=t_init,
            move_policy=policy,
            search_perm=False if initial_perm is not None else None,
            seed=seed,
        )

        g = load_code(code)
        chan = make_channel(channel, param, g)
        best, results = run_chains(
            logger,
            g,
            n_big,
            chan,
            cfg,
            seeds=[cfg.seed + i for i in range(chains)],
            workers=workers,
            initial_perm=initial_perm,
        )
        write_transformation(output, best.transformation)
        if trace is not None:
            write_trace_csv(trace, best.trace)

    for r in results:
        console.print(
            f"seed {r.seed}: best cost {r.best_cost:.6f} "
            f"(iteration {r.iterations_to_best}, {r.accepted} accepted)"
        )
    console.print(f"[bold green]Best cost {best.best_cost:.6f}[/bold green] -> {output}")
