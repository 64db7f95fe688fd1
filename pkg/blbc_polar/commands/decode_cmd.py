"""blbc-polar decode -- decode one LLR vector."""

from __future__ import annotations

from pathlib import Path

import typer

from blbc_polar.commands.common import bits_str, console, exit_on_error, load_pair
from blbc_polar.decoder import Decoder
from blbc_polar.formats import parse_llr
from blbc_polar.models import DecoderKind, KernelMode


def decode_command(
    code: str = typer.Option(..., "--code", "-c", help="Bundled code name, construction or generator file."),
    transformation: Path = typer.Option(..., "--transformation", "-t", help="Transformation file."),
    llr: Path = typer.Option(..., "--llr", help="Channel LLRs, one real per line (n values)."),
    decoder: DecoderKind = typer.Option(DecoderKind.SC, "--decoder", "-d", help="Decoder."),
    list_size: int = typer.Option(1, "--list-size", "-L", help="SCL list size."),
    kernel: KernelMode = typer.Option(KernelMode.EXACT, "--kernel", help="Check-node function."),
) -> None:
    """Print the decoded message, codeword and path metric."""
    with exit_on_error():
        _, t = load_pair(code, transformation)
        values = parse_llr(llr.read_text(encoding="utf-8"))
        result = Decoder(decoder, t, list_size, kernel).decode(values)

    console.print(f"message {bits_str(result.message)}")
    console.print(f"codeword {bits_str(result.codeword)}")
    console.print(f"path_metric {result.path_metric:.6f}")
