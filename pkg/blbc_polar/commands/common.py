"""Helpers shared by the CLI commands: channel options, logging setup, error exit."""

from __future__ import annotations

import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator

import numpy as np
import typer
from rich.console import Console

from blbc_polar.errors import PolarTransformError
from blbc_polar.formats import read_transformation
from blbc_polar.gf2 import BitMatrix
from blbc_polar.log import get_logger
from blbc_polar.models import ChannelKind
from blbc_polar.reliability import ChannelParam
from blbc_polar.resources import load_code
from blbc_polar.transform import Transformation

console = Console()
err_console = Console(stderr=True)

LOGGER_NAME = "blbc_polar"


def setup_logger(verbose: bool, log_file: bool) -> logging.Logger:
    """WARNING by default, INFO with --verbose; --log-file adds the rotating file."""
    logger = get_logger(LOGGER_NAME, add_file_handler=log_file)
    logger.setLevel(logging.INFO if verbose else logging.WARNING)
    return logger


@contextmanager
def exit_on_error() -> Iterator[None]:
    """Turn library errors into a red message and exit code 1."""
    try:
        yield
    except PolarTransformError as e:
        err_console.print(f"[red]{type(e).__name__}: {e}[/red]")
        raise typer.Exit(1) from None
    except OSError as e:
        err_console.print(f"[red]{e}[/red]")
        raise typer.Exit(1) from None


def make_channel(kind: ChannelKind, param: float, g: BitMatrix) -> ChannelParam:
    """param is p (BSC), epsilon (BEC) or Eb/N0 in dB (BiAWGN, at the code rate)."""
    if kind is ChannelKind.BIAWGN:
        return ChannelParam.biawgn(param, g.n_rows / g.n_cols)
    return ChannelParam(kind, param)


def load_pair(code: str, transformation: Path) -> tuple[BitMatrix, Transformation]:
    g = load_code(code)
    return g, read_transformation(transformation, g)


def bits_str(bits: np.ndarray) -> str:
    return " ".join(str(int(b)) for b in bits)
