"""Exception hierarchy for blbc_polar.

Library code raises these; only the CLI layer catches them and turns them into
an exit code.
"""

from __future__ import annotations


class PolarTransformError(ValueError):
    """Base class for every error raised by blbc_polar."""


class RankDeficient(PolarTransformError):
    """Matrix does not have full row rank."""

    def __init__(self, rank: int, rows: int) -> None:
        super().__init__(f"matrix has rank {rank}, expected full row rank {rows}")
        self.rank = rank
        self.rows = rows


class Singular(PolarTransformError):
    """Square matrix is not invertible over GF(2)."""


class DimensionMismatch(PolarTransformError):
    """Operand shapes do not fit together."""


class NotABijection(PolarTransformError):
    """Permutation vector has a duplicate or out-of-range entry."""


class IndexOutOfRange(PolarTransformError):
    """Stage/row or position index outside its valid range."""


class LengthMismatch(PolarTransformError):
    """Vector length does not match what the operation expects."""


class ShortenViolation(PolarTransformError):
    """A basis codeword is nonzero at a shortened (dropped) position."""


class NotEchelon(PolarTransformError):
    """Matrix is not in reduced row echelon form."""


class ParamOutOfRange(PolarTransformError):
    """Channel or simulation parameter outside its valid range."""


class DimensionTooLarge(PolarTransformError):
    """Code dimension too large for exhaustive codebook decoding."""


class SpaceTooLarge(PolarTransformError):
    """Exhaustive search space exceeds the enumeration guard."""


class ConfigMismatch(PolarTransformError):
    """Configuration or files are inconsistent with each other."""


class ParseError(PolarTransformError):
    """Malformed input file."""

    def __init__(self, message: str, line: int, column: int | None = None) -> None:
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")
        self.line = line
        self.column = column


class IntegrityError(PolarTransformError):
    """Stored M_DF block disagrees with the recomputed one."""
