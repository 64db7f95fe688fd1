"""blbc-polar verify -- round-trip and structural checks on a transformation file."""

from __future__ import annotations

from pathlib import Path

import typer

from blbc_polar.commands.common import console, exit_on_error, load_pair
from blbc_polar.gf2 import BitMatrix, matmul
from blbc_polar.transform import Transformation, verify_roundtrip


def structural_checks(t: Transformation) -> list[str]:
    """Names of the violated structural properties (empty when all hold)."""
    problems = []
    if not t.generator_tilde.is_lower_unitriangular():
        problems.append("G~ is not lower unitriangular")
    if matmul(t.graph.gen, t.graph.gen_inv) != BitMatrix.identity(t.n_big):
        problems.append("G~ inverse does not invert G~")
    if len(t.info_set) != t.k:
        problems.append(f"information set has {len(t.info_set)} positions, expected {t.k}")
    for i, refs in enumerate(t.frozen.ref_positions):
        if any(j >= i for j in refs):
            problems.append(f"frozen position {i + 1} references a later position")
        if any(not t.frozen.is_info(j) for j in refs):
            problems.append(f"frozen position {i + 1} references a frozen position")
    return problems


def verify_command(
    code: str = typer.Option(..., "--code", "-c", help="Bundled code name, construction or generator file."),
    transformation: Path = typer.Option(..., "--transformation", "-t", help="Transformation file."),
    trials: int = typer.Option(1000, "--trials", help="Random messages to round-trip."),
    seed: int = typer.Option(0, "--seed", help="RNG seed for the messages."),
) -> None:
    """Check c = m G for random messages plus the structural invariants."""
    with exit_on_error():
        _, t = load_pair(code, transformation)
        report = verify_roundtrip(t, trials, seed)
        problems = structural_checks(t)

    console.print(f"roundtrip: {report.trials - report.failures}/{report.trials} passed")
    if report.first_failure is not None:
        f = report.first_failure
        console.print(f"[red]first failure ({f.kind}) at trial {f.trial}: message {f.message}[/red]")
    for problem in problems:
        console.print(f"[red]{problem}[/red]")
    if not report.passed or problems:
        raise typer.Exit(1)
    console.print("[bold green]Transformation verified.[/bold green]")
