"""blbc-polar simulate -- FER/BER curves over BPSK/AWGN."""

from __future__ import annotations

from pathlib import Path
from typing import Optional

import typer
from rich.table import Table

from blbc_polar.channel import uncoded_fer
from blbc_polar.commands.common import console, exit_on_error, setup_logger
from blbc_polar.config import load_sim_config, with_overrides
from blbc_polar.errors import ConfigMismatch
from blbc_polar.formats import write_results_csv
from blbc_polar.models import DecoderKind, KernelMode, SimConfig
from blbc_polar.resources import load_code
from blbc_polar.simulate import simulate_fer


def simulate_command(
    config: Optional[Path] = typer.Option(None, "--config", help="YAML file with SimConfig fields."),
    code: Optional[str] = typer.Option(None, "--code", "-c", help="Bundled code name, construction or generator file."),
    transformation: Optional[Path] = typer.Option(None, "--transformation", "-t", help="Transformation file."),
    decoder: Optional[DecoderKind] = typer.Option(None, "--decoder", "-d", help="Decoder."),
    list_size: Optional[int] = typer.Option(None, "--list-size", "-L", help="SCL list size."),
    kernel: Optional[KernelMode] = typer.Option(None, "--kernel", help="Check-node function."),
    ebno: Optional[list[float]] = typer.Option(None, "--ebno", help="Eb/N0 point in dB (repeatable)."),
    max_frames: Optional[int] = typer.Option(None, "--max-frames", help="Frame budget per point."),
    target_errors: Optional[int] = typer.Option(None, "--target-errors", help="Stop after this many frame errors."),
    batch_size: Optional[int] = typer.Option(None, "--batch-size", help="Frames per RNG batch."),
    seed: Optional[int] = typer.Option(None, "--seed", help="Base seed."),
    workers: Optional[int] = typer.Option(None, "--workers", "-j", help="Worker processes."),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Results CSV."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log progress to stderr."),
    log_file: bool = typer.Option(False, "--log-file", help="Also log to $LOG_ROOT/blbc_polar.log."),
) -> None:
    """Simulate frame and bit error rates; flags override the config file."""
    logger = setup_logger(verbose, log_file)
    with exit_on_error():
        overrides = dict(
            code=code,
            transformation=str(transformation) if transformation else None,
            decoder=decoder,
            list_size=list_size,
            kernel=kernel,
            ebno_db=ebno or None,
            max_frames=max_frames,
            target_frame_errors=target_errors,
            batch_size=batch_size,
            seed=seed,
            workers=workers,
        )
        if config is not None:
            cfg = with_overrides(load_sim_config(config), **overrides)
        else:
            missing = [f for f in ("code", "transformation", "ebno_db") if not overrides[f]]
            if missing:
                raise ConfigMismatch(f"missing {', '.join(missing)} (flags or --config)")
            cfg = with_overrides(
                SimConfig(code=code, transformation=str(transformation), ebno_db=ebno),
                **overrides,
            )
        k = load_code(cfg.code).n_rows
        result = simulate_fer(cfg, logger)
        if output is not None:
            write_results_csv(output, result.points)

    table = Table("Eb/N0", "frames", "errors", "FER", "BER", "uncoded FER", "seconds")
    for p in result.points:
        table.add_row(
            f"{p.ebno_db:g}",
            str(p.frames),
            str(p.frame_errors),
            f"{p.fer:.3e}",
            f"{p.ber:.3e}",
            f"{uncoded_fer(k, p.ebno_db):.3e}",
            f"{p.wall_seconds:.1f}",
        )
    console.print(table)
