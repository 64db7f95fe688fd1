"""CLI entry point for blbc_polar."""

import typer

from blbc_polar.commands.codes_cmd import codes_command
from blbc_polar.commands.cost_cmd import cost_command
from blbc_polar.commands.decode_cmd import decode_command
from blbc_polar.commands.encode_cmd import encode_command
from blbc_polar.commands.exhaustive_cmd import exhaustive_command
from blbc_polar.commands.search_cmd import search_command
from blbc_polar.commands.simulate_cmd import simulate_command
from blbc_polar.commands.verify_cmd import verify_command

app = typer.Typer(
    name="blbc-polar",
    help="Turn binary linear block codes into pruned polar-like codes and decode them with SC/SCL.",
    no_args_is_help=True,
)

app.command("search")(search_command)
app.command("exhaustive")(exhaustive_command)
app.command("cost")(cost_command)
app.command("encode")(encode_command)
app.command("decode")(decode_command)
app.command("simulate")(simulate_command)
app.command("verify")(verify_command)
app.command("codes")(codes_command)


if __name__ == "__main__":
    app()
