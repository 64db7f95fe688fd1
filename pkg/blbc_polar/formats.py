"""Text formats: generator matrices, permutations, transformation files, LLRs, CSVs.

All positions in files are 1-indexed.
"""

from __future__ import annotations

import csv
import re
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from blbc_polar.errors import ConfigMismatch, IntegrityError, ParseError
from blbc_polar.gf2 import BitMatrix, Permutation, pack_bits
from blbc_polar.models import SimPoint
from blbc_polar.polarlike import PruningMatrix, stages_for
from blbc_polar.search import CostTrace
from blbc_polar.transform import ShortenSpec, Transformation, build_transformation

RESULT_COLUMNS = [
    "ebno_db",
    "decoder",
    "list_size",
    "frames",
    "frame_errors",
    "bit_errors",
    "fer",
    "ber",
    "candidates",
    "wall_seconds",
    "seed",
]
TRACE_COLUMNS = ["iteration", "temperature", "current_cost", "best_cost"]


class _Lines:
    """Non-blank lines with their 1-based line numbers."""

    def __init__(self, text: str) -> None:
        self._items = [
            (no, line.strip())
            for no, line in enumerate(text.splitlines(), start=1)
            if line.strip()
        ]
        self._pos = 0

    def next(self, what: str) -> tuple[int, str]:
        if self._pos >= len(self._items):
            last = self._items[-1][0] if self._items else 0
            raise ParseError(f"unexpected end of file, expected {what}", last + 1)
        item = self._items[self._pos]
        self._pos += 1
        return item

    def peek(self) -> Optional[tuple[int, str]]:
        return self._items[self._pos] if self._pos < len(self._items) else None

    def rest(self) -> Iterator[tuple[int, str]]:
        while self._pos < len(self._items):
            yield self.next("")


def _ints(line_no: int, text: str, offset: int = 0) -> list[int]:
    """Whitespace-separated integers; offset shifts reported columns past a label."""
    values = []
    for match in re.finditer(r"\S+", text):
        try:
            values.append(int(match.group()))
        except ValueError:
            raise ParseError(
                f"expected an integer, got {match.group()!r}",
                line_no,
                offset + match.start() + 1,
            ) from None
    return values


def _bits(line_no: int, text: str, width: int, what: str) -> list[int]:
    values = _ints(line_no, text)
    if len(values) != width:
        raise ParseError(f"{what}: expected {width} digits, got {len(values)}", line_no)
    for col, v in enumerate(values, start=1):
        if v not in (0, 1):
            raise ParseError(f"{what}: digit {v} is not 0/1", line_no, col)
    return values


def _labelled(line_no: int, text: str, label: str) -> str:
    if not text.startswith(label):
        raise ParseError(f"expected '{label}'", line_no, 1)
    return text[len(label) :]


# ----------------------------------------------------------------------------
# Generator matrices and permutations
# ----------------------------------------------------------------------------


def parse_generator(text: str) -> BitMatrix:
    """'k n' header, then k lines of n space-separated 0/1 digits."""
    lines = _Lines(text)
    no, header = lines.next("'k n' header")
    dims = _ints(no, header)
    if len(dims) != 2 or dims[0] < 1 or dims[1] < 1:
        raise ParseError("header must be 'k n' with positive integers", no)
    k, n = dims
    rows = [_bits(*lines.next(f"row {t + 1}"), n, f"row {t + 1}") for t in range(k)]
    extra = lines.peek()
    if extra is not None:
        raise ParseError(f"trailing content after {k} rows", extra[0])
    return BitMatrix.from_array(rows)


def format_generator(g: BitMatrix) -> str:
    body = "\n".join(" ".join(str(b) for b in g.row(i)) for i in range(g.n_rows))
    return f"{g.n_rows} {g.n_cols}\n{body}\n"


def read_generator(path: Path) -> BitMatrix:
    return parse_generator(path.read_text(encoding="utf-8"))


def write_generator(path: Path, g: BitMatrix) -> None:
    path.write_text(format_generator(g), encoding="utf-8")


def parse_permutation(text: str) -> Permutation:
    """One line of N 1-indexed entries (extra whitespace and line breaks allowed)."""
    values: list[int] = []
    for no, line in _Lines(text).rest():
        values.extend(_ints(no, line))
    return Permutation.from_one_line(values)


def format_permutation(perm: Permutation) -> str:
    return " ".join(str(v) for v in perm.one_line()) + "\n"


# ----------------------------------------------------------------------------
# Transformation files
# ----------------------------------------------------------------------------


def format_transformation(t: Transformation, include_mdf: bool = True) -> str:
    out = [f"{t.n_big} {t.n} {t.k}"]
    out.append("perm: " + " ".join(str(v) for v in t.perm.one_line()))
    out.append("R:")
    for row in t.pruning.array.astype(int):
        out.append(" ".join(str(v) for v in row))
    out.append("dropped:" + "".join(f" {d + 1}" for d in t.shorten.dropped))
    if include_mdf:
        out.append("mdf:")
        for i in range(t.m_df.n_rows):
            out.append(" ".join(str(b) for b in t.m_df.row(i)))
    return "\n".join(out) + "\n"


def parse_transformation(text: str, g: BitMatrix) -> Transformation:
    """Rebuild a transformation for generator g from its file form.

    Raises:
        ParseError: malformed file.
        ConfigMismatch: header (n, k) disagrees with g.
        IntegrityError: a stored mdf block disagrees with the recomputed M_DF.
    """
    lines = _Lines(text)
    no, header = lines.next("'N n k' header")
    dims = _ints(no, header)
    if len(dims) != 3:
        raise ParseError("header must be 'N n k'", no)
    n_big, n, k = dims
    try:
        m = stages_for(n_big)
    except ValueError as e:
        raise ParseError(str(e), no, 1) from None
    if (n, k) != (g.n_cols, g.n_rows):
        raise ConfigMismatch(
            f"transformation is for an ({n},{k}) code, generator is ({g.n_cols},{g.n_rows})"
        )

    no, line = lines.next("'perm:' line")
    perm_values = _ints(no, _labelled(no, line, "perm:"), len("perm:"))
    if len(perm_values) != n_big:
        raise ParseError(f"perm: expected {n_big} entries, got {len(perm_values)}", no)
    try:
        perm = Permutation.from_one_line(perm_values)
    except ValueError as e:
        raise ParseError(str(e), no) from None

    no, line = lines.next("'R:' line")
    if line != "R:":
        raise ParseError("expected 'R:'", no, 1)
    flags = [_bits(*lines.next("R row"), m, "R row") for _ in range(n_big // 2)]
    pruning = PruningMatrix.from_array(flags)

    no, line = lines.next("'dropped:' line")
    dropped = _ints(no, _labelled(no, line, "dropped:"), len("dropped:"))
    if len(dropped) != n_big - n:
        raise ParseError(f"dropped: expected {n_big - n} positions, got {len(dropped)}", no)
    try:
        shorten = ShortenSpec.from_dropped(n_big, [d - 1 for d in dropped])
    except ValueError as e:
        raise ParseError(str(e), no) from None

    stored: Optional[list[list[int]]] = None
    if lines.peek() is not None:
        no, line = lines.next("'mdf:' block")
        if line != "mdf:":
            raise ParseError("expected 'mdf:' or end of file", no, 1)
        stored = [_bits(*lines.next("mdf row"), n_big, "mdf row") for _ in range(k)]
        if (extra := lines.peek()) is not None:
            raise ParseError("trailing content after mdf block", extra[0])

    t = build_transformation(g, n_big, perm, pruning, shorten)
    if stored is not None and tuple(pack_bits(r) for r in stored) != t.m_df.rows:
        raise IntegrityError("stored mdf block differs from the recomputed M_DF")
    return t


def read_transformation(path: Path, g: BitMatrix) -> Transformation:
    return parse_transformation(path.read_text(encoding="utf-8"), g)


def write_transformation(path: Path, t: Transformation, include_mdf: bool = True) -> None:
    path.write_text(format_transformation(t, include_mdf), encoding="utf-8")


# ----------------------------------------------------------------------------
# LLR vectors
# ----------------------------------------------------------------------------


def parse_llr(text: str) -> np.ndarray:
    """One real number per line."""
    values = []
    for no, line in _Lines(text).rest():
        try:
            values.append(float(line))
        except ValueError:
            raise ParseError(f"expected a real number, got {line!r}", no, 1) from None
    return np.array(values, dtype=np.float64)


def format_llr(llr: Sequence[float] | np.ndarray) -> str:
    return "".join(f"{float(v)!r}\n" for v in llr)


# ----------------------------------------------------------------------------
# CSV outputs
# ----------------------------------------------------------------------------


def write_results_csv(path: Path, points: Iterable[SimPoint]) -> None:
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=RESULT_COLUMNS)
        writer.writeheader()
        for p in points:
            row = p.model_dump(mode="json")
            writer.writerow({c: row[c] for c in RESULT_COLUMNS})


def read_results_csv(path: Path) -> list[SimPoint]:
    with path.open(newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames != RESULT_COLUMNS:
            raise ParseError(f"unexpected columns {reader.fieldnames}", 1)
        points = []
        for no, row in enumerate(reader, start=2):
            try:
                points.append(SimPoint.model_validate(row))
            except ValueError as e:
                raise ParseError(str(e), no) from None
        return points


def write_trace_csv(path: Path, trace: CostTrace) -> None:
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(TRACE_COLUMNS)
        for it, temp, cur, best in zip(
            trace.iterations, trace.temperature, trace.current_cost, trace.best_cost
        ):
            writer.writerow([int(it), repr(float(temp)), repr(float(cur)), repr(float(best))])
