"""Bit-packed linear algebra over GF(2): matrices, row reduction, inversion, permutations.

Rows are stored as Python ints (bit j = column j), so a row of any width is one
machine-word-packed integer and row addition is a single XOR. All public
contracts are entry-wise; the packing never leaks out.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from blbc_polar.errors import (
    DimensionMismatch,
    LengthMismatch,
    NotABijection,
    RankDeficient,
    Singular,
)


def pack_bits(bits: Sequence[int] | np.ndarray) -> int:
    """Pack a 0/1 vector into an int with bit j = entry j."""
    arr = np.asarray(bits, dtype=np.uint8) & 1
    if arr.size == 0:
        return 0
    return int.from_bytes(np.packbits(arr, bitorder="little").tobytes(), "little")


def unpack_bits(word: int, length: int) -> np.ndarray:
    """Inverse of pack_bits: a uint8 vector of the given length."""
    raw = word.to_bytes((length + 7) // 8, "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[
        :length
    ].copy()


def _iter_set_bits(word: int) -> Iterable[int]:
    while word:
        low = word & -word
        yield low.bit_length() - 1
        word ^= low


@dataclass(frozen=True)
class BitMatrix:
    """Dense immutable matrix over GF(2).

    Zero rows are allowed only to represent the dimension-0 code; columns are
    always at least one.
    """

    n_rows: int
    n_cols: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n_cols < 1 or self.n_rows < 0:
            raise DimensionMismatch(f"invalid shape {self.n_rows}x{self.n_cols}")
        if len(self.rows) != self.n_rows:
            raise DimensionMismatch(
                f"expected {self.n_rows} rows, got {len(self.rows)}"
            )
        limit = 1 << self.n_cols
        if any(r < 0 or r >= limit for r in self.rows):
            raise DimensionMismatch(f"row wider than {self.n_cols} columns")

    @classmethod
    def from_array(cls, array: Sequence[Sequence[int]] | np.ndarray) -> BitMatrix:
        arr = np.asarray(array, dtype=np.int64)
        if arr.ndim != 2:
            raise DimensionMismatch(f"expected a 2-D array, got {arr.ndim}-D")
        if np.any((arr != 0) & (arr != 1)):
            raise DimensionMismatch("entries must be 0 or 1")
        return cls(arr.shape[0], arr.shape[1], tuple(pack_bits(r) for r in arr))

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> BitMatrix:
        return cls(n_rows, n_cols, (0,) * n_rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    def get(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def row(self, i: int) -> np.ndarray:
        return unpack_bits(self.rows[i], self.n_cols)

    def column_words(self) -> list[int]:
        """Columns packed as ints over the rows (bit t = row t)."""
        cols = [0] * self.n_cols
        for t, r in enumerate(self.rows):
            for j in _iter_set_bits(r):
                cols[j] |= 1 << t
        return cols

    def to_array(self) -> np.ndarray:
        if self.n_rows == 0:
            return np.zeros((0, self.n_cols), dtype=np.uint8)
        return np.stack([self.row(i) for i in range(self.n_rows)])

    def transpose(self) -> BitMatrix:
        return BitMatrix(self.n_cols, self.n_rows, tuple(self.column_words()))

    def vecmul(self, vector: Sequence[int] | np.ndarray) -> np.ndarray:
        """Row vector times matrix, v x M."""
        v = np.asarray(vector, dtype=np.uint8)
        if v.shape != (self.n_rows,):
            raise LengthMismatch(f"expected length {self.n_rows}, got {v.shape}")
        acc = 0
        for t in np.flatnonzero(v & 1):
            acc ^= self.rows[t]
        return unpack_bits(acc, self.n_cols)

    def kron(self, other: BitMatrix) -> BitMatrix:
        """Kronecker product over GF(2)."""
        rows = []
        for ra in self.rows:
            for rb in other.rows:
                word = 0
                for j in _iter_set_bits(ra):
                    word |= rb << (j * other.n_cols)
                rows.append(word)
        return BitMatrix(
            self.n_rows * other.n_rows, self.n_cols * other.n_cols, tuple(rows)
        )

    def is_lower_unitriangular(self) -> bool:
        if self.n_rows != self.n_cols:
            return False
        return all(
            (r >> i) & 1 == 1 and r < (1 << (i + 1)) for i, r in enumerate(self.rows)
        )

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        return matmul(self, other)

    def __add__(self, other: BitMatrix) -> BitMatrix:
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return BitMatrix(
            self.n_rows, self.n_cols, tuple(a ^ b for a, b in zip(self.rows, other.rows))
        )

    def __str__(self) -> str:
        return "\n".join(" ".join(str(b) for b in self.row(i)) for i in range(self.n_rows))


F2 = BitMatrix(2, 2, (0b01, 0b11))


@dataclass(frozen=True)
class RrefResult:
    """E x M = reduced, with reduced in reduced row echelon form."""

    elimination: BitMatrix
    reduced: BitMatrix
    pivots: tuple[int, ...]


def combine_rows(rows: Sequence[int], selector: int) -> int:
    """XOR of rows[t] over the set bits t of selector (v x M in packed form)."""
    acc = 0
    for t in _iter_set_bits(selector):
        acc ^= rows[t]
    return acc


def parity(word: int) -> int:
    return word.bit_count() & 1


def matmul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Product over GF(2)."""
    if a.n_cols != b.n_rows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    out = []
    for r in a.rows:
        acc = 0
        for j in _iter_set_bits(r):
            acc ^= b.rows[j]
        out.append(acc)
    return BitMatrix(a.n_rows, b.n_cols, tuple(out))


def _eliminate(rows: list[int], n_cols: int) -> tuple[list[int], list[int], list[int]]:
    """Gauss-Jordan on packed rows. Returns (reduced rows, elimination rows, pivots)."""
    k = len(rows)
    elim = [1 << i for i in range(k)]
    pivots: list[int] = []
    r = 0
    for col in range(n_cols):
        if r == k:
            break
        bit = 1 << col
        sel = next((i for i in range(r, k) if rows[i] & bit), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        elim[r], elim[sel] = elim[sel], elim[r]
        for i in range(k):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
                elim[i] ^= elim[r]
        pivots.append(col)
        r += 1
    return rows, elim, pivots


def rank(m: BitMatrix) -> int:
    _, _, pivots = _eliminate(list(m.rows), m.n_cols)
    return len(pivots)


def rref(m: BitMatrix) -> RrefResult:
    """Reduced row echelon form of a full-row-rank matrix.

    Raises:
        RankDeficient: when rank < rows.
    """
    rows, elim, pivots = _eliminate(list(m.rows), m.n_cols)
    if len(pivots) < m.n_rows:
        raise RankDeficient(len(pivots), m.n_rows)
    # the dimension-0 code gets a 0x1 placeholder elimination matrix
    elimination = (
        BitMatrix(m.n_rows, m.n_rows, tuple(elim)) if m.n_rows else BitMatrix(0, 1, ())
    )
    result = RrefResult(
        elimination=elimination,
        reduced=BitMatrix(m.n_rows, m.n_cols, tuple(rows)),
        pivots=tuple(pivots),
    )
    if m.n_rows and matmul(result.elimination, m) != result.reduced:
        raise AssertionError("elimination matrix does not reproduce the reduced form")
    return result


def invert(m: BitMatrix) -> BitMatrix:
    """Inverse over GF(2).

    Raises:
        Singular: when m is not square or not invertible.
    """
    if m.n_rows != m.n_cols:
        raise Singular(f"matrix {m.shape} is not square")
    _, elim, pivots = _eliminate(list(m.rows), m.n_cols)
    if len(pivots) < m.n_rows:
        raise Singular(f"matrix has rank {len(pivots)} < {m.n_rows}")
    return BitMatrix(m.n_rows, m.n_cols, tuple(elim))


@dataclass(frozen=True)
class Permutation:
    """Permutation in one-line notation: entry i moves to position p[i].

    Stored 0-indexed; 1-indexed only at I/O boundaries (from_one_line / one_line).
    As a matrix, P[i, p[i]] = 1, so v x P moves v[i] to position p[i].
    """

    p: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.p)
        if n < 1 or sorted(self.p) != list(range(n)):
            raise NotABijection(f"not a permutation of 0..{n - 1}: {list(self.p)}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_one_line(cls, values: Sequence[int]) -> Permutation:
        """Build from 1-indexed one-line notation."""
        n = len(values)
        vals = [int(v) for v in values]
        if any(v < 1 or v > n for v in vals) or len(set(vals)) != n:
            raise NotABijection(f"not a permutation of 1..{n}: {vals}")
        return cls(tuple(v - 1 for v in vals))

    @property
    def n(self) -> int:
        return len(self.p)

    def one_line(self) -> list[int]:
        return [v + 1 for v in self.p]

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, v in enumerate(self.p):
            inv[v] = i
        return Permutation(tuple(inv))

    def apply(self, vector: Sequence | np.ndarray) -> np.ndarray:
        """v x P: out[p[i]] = v[i]."""
        v = np.asarray(vector)
        if v.shape[0] != self.n:
            raise LengthMismatch(f"expected length {self.n}, got {v.shape[0]}")
        out = np.empty_like(v)
        out[list(self.p)] = v
        return out

    def apply_inverse(self, vector: Sequence | np.ndarray) -> np.ndarray:
        """v x P^-1: out[i] = v[p[i]]."""
        v = np.asarray(vector)
        if v.shape[0] != self.n:
            raise LengthMismatch(f"expected length {self.n}, got {v.shape[0]}")
        return v[list(self.p)].copy()

    def apply_word(self, word: int) -> int:
        """Packed form of apply: bit i moves to bit p[i]."""
        out = 0
        for i in _iter_set_bits(word):
            out |= 1 << self.p[i]
        return out

    def apply_inverse_word(self, word: int) -> int:
        """Packed form of apply_inverse: bit i of the result is bit p[i]."""
        out = 0
        for i, v in enumerate(self.p):
            if (word >> v) & 1:
                out |= 1 << i
        return out

    def then(self, other: Permutation) -> Permutation:
        """Apply self, then other (matrix product P_self x P_other)."""
        if other.n != self.n:
            raise DimensionMismatch(f"cannot compose lengths {self.n} and {other.n}")
        return Permutation(tuple(other.p[v] for v in self.p))

    def swapped(self, i: int, j: int) -> Permutation:
        p = list(self.p)
        p[i], p[j] = p[j], p[i]
        return Permutation(tuple(p))

    def matrix_view(self) -> BitMatrix:
        return BitMatrix(self.n, self.n, tuple(1 << v for v in self.p))

    def permute_columns_inverse(self, m: BitMatrix) -> BitMatrix:
        """M x P^-1: column i of the result is column p[i] of M."""
        if m.n_cols != self.n:
            raise DimensionMismatch(f"matrix has {m.n_cols} columns, permutation {self.n}")
        if m.n_rows == 0:
            return m
        cols = m.column_words()
        permuted = [cols[v] for v in self.p]
        return BitMatrix(self.n, m.n_rows, tuple(permuted)).transpose()
