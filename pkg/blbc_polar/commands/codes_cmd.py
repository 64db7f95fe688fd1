"""blbc-polar codes -- list bundled and constructible codes."""

from __future__ import annotations

import typer
from rich.table import Table

from blbc_polar.commands.common import console, exit_on_error
from blbc_polar.constructions import CONSTRUCTED_EXAMPLES
from blbc_polar.resources import list_codes, list_permutations, load_code


def codes_command(
    constructed: bool = typer.Option(
        False, "--constructed", help="Also build the example BCH constructions (slower)."
    ),
) -> None:
    """Show the codes that --code accepts by name."""
    table = Table("name", "n", "k", "source")
    with exit_on_error():
        for name in list_codes():
            g = load_code(name)
            table.add_row(name, str(g.n_cols), str(g.n_rows), "bundled")
        for name in CONSTRUCTED_EXAMPLES:
            if constructed:
                g = load_code(name)
                table.add_row(name, str(g.n_cols), str(g.n_rows), "galois")
            else:
                table.add_row(name, "", "", "galois")
    console.print(table)
    perms = list_permutations()
    if perms:
        console.print("permutations: " + ", ".join(perms))
