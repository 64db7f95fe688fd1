"""blbc-polar encode -- encode a message through the transformation."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import typer

from blbc_polar.commands.common import bits_str, console, exit_on_error, load_pair
from blbc_polar.errors import ParseError
from blbc_polar.transform import encode_via_transform


def parse_message(text: str) -> np.ndarray:
    """0/1 digits, optionally separated by whitespace."""
    bits = []
    for col, ch in enumerate(text, start=1):
        if ch in "01":
            bits.append(int(ch))
        elif not ch.isspace():
            raise ParseError(f"message digit {ch!r} is not 0/1", 1, col)
    return np.array(bits, dtype=np.uint8)


def encode_command(
    code: str = typer.Option(..., "--code", "-c", help="Bundled code name, construction or generator file."),
    transformation: Path = typer.Option(..., "--transformation", "-t", help="Transformation file."),
    message: str = typer.Option(..., "--message", "-m", help="k message bits, e.g. '1 0 1' or '101'."),
) -> None:
    """Print u = m_p M_DF and the codeword c = u G~ P S."""
    with exit_on_error():
        g, t = load_pair(code, transformation)
        m = parse_message(message)
        u = t.u_from_message(m)
        c = encode_via_transform(m, t)

    if not np.array_equal(c, g.vecmul(m)):
        console.print("[red]Transformation does not reproduce m x G.[/red]")
        raise typer.Exit(1)
    console.print(f"u {bits_str(u)}")
    console.print(f"codeword {bits_str(c)}")
