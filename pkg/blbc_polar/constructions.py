"""Generator matrices built on the fly rather than shipped as files."""

from __future__ import annotations

import re
from typing import Optional

import galois
import numpy as np

from blbc_polar.errors import ConfigMismatch
from blbc_polar.gf2 import BitMatrix, parity

_CONSTRUCTED = re.compile(r"^(e?bch)_(\d+)_(\d+)$")


def extend_with_parity(g: BitMatrix) -> BitMatrix:
    """Append an overall parity column, so every codeword has even weight."""
    rows = tuple(r | (parity(r) << g.n_cols) for r in g.rows)
    return BitMatrix(g.n_rows, g.n_cols + 1, rows)


def bch(n: int, k: int) -> BitMatrix:
    """Systematic generator of the narrow-sense primitive binary BCH(n, k) code."""
    try:
        code = galois.BCH(n, k)
    except ValueError as e:
        raise ConfigMismatch(f"no binary BCH code with n={n}, k={k}: {e}") from None
    return BitMatrix.from_array(np.asarray(code.G, dtype=np.int64))


def extended_bch(n: int, k: int) -> BitMatrix:
    """BCH(n, k) with an overall parity bit: an (n + 1, k) code."""
    return extend_with_parity(bch(n, k))


def constructed_code(name: str) -> Optional[BitMatrix]:
    """'bch_127_57' or 'ebch_128_57'; None when the name is not a construction."""
    match = _CONSTRUCTED.match(name)
    if match is None:
        return None
    family, n, k = match.group(1), int(match.group(2)), int(match.group(3))
    if family == "ebch":
        return extended_bch(n - 1, k)
    return bch(n, k)


CONSTRUCTED_EXAMPLES = ["bch_127_57", "ebch_128_57", "ebch_32_16", "ebch_64_36"]
