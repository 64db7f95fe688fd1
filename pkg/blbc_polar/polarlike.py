"""Pruned polar graph: pruning-matrix semantics, generator construction, graph encoding.

Conventions (natural order, no bit-reversal):
- Stage s (1..m) joins wires at span 2**(s-1); stage 1 sits next to the u side.
- Encoding runs stage 1 first; a kept butterfly on wires (a, b), a < b, sets
  wire_a <- wire_a xor wire_b; a pruned butterfly leaves both wires alone.
- Row r of the pruning matrix at stage s is the butterfly with the r-th
  smallest lower wire.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from blbc_polar.errors import DimensionMismatch, IndexOutOfRange, LengthMismatch
from blbc_polar.gf2 import BitMatrix


def stages_for(n_big: int) -> int:
    """log2(N), validating that N is a power of two with N >= 2."""
    if n_big < 2 or n_big & (n_big - 1):
        raise DimensionMismatch(f"block length {n_big} is not a power of two >= 2")
    return n_big.bit_length() - 1


def _lower_wire(stage0: int, row0: int) -> int:
    span = 1 << stage0
    return ((row0 >> stage0) << (stage0 + 1)) | (row0 & (span - 1))


def butterfly_map(n_big: int, stage: int, row: int) -> tuple[int, int]:
    """1-indexed (stage, row) -> 1-indexed wire pair (lo, hi) with hi - lo = 2**(stage-1)."""
    m = stages_for(n_big)
    if not 1 <= stage <= m or not 1 <= row <= n_big // 2:
        raise IndexOutOfRange(f"stage {stage} / row {row} outside N={n_big}")
    lo = _lower_wire(stage - 1, row - 1)
    return lo + 1, lo + (1 << (stage - 1)) + 1


@dataclass(frozen=True)
class PruningMatrix:
    """N/2 x m flags, 1 = kernel kept as F2, 0 = kernel pruned to I2.

    flags is the row-major flattening: flags[row * m + stage0].
    """

    n_big: int
    flags: tuple[int, ...]

    def __post_init__(self) -> None:
        m = stages_for(self.n_big)
        if len(self.flags) != (self.n_big // 2) * m:
            raise DimensionMismatch(
                f"expected {(self.n_big // 2) * m} flags for N={self.n_big}, "
                f"got {len(self.flags)}"
            )
        if any(f not in (0, 1) for f in self.flags):
            raise DimensionMismatch("pruning flags must be 0 or 1")

    @classmethod
    def all_ones(cls, n_big: int) -> PruningMatrix:
        return cls(n_big, (1,) * ((n_big // 2) * stages_for(n_big)))

    @classmethod
    def all_zeros(cls, n_big: int) -> PruningMatrix:
        return cls(n_big, (0,) * ((n_big // 2) * stages_for(n_big)))

    @classmethod
    def from_array(cls, array: Sequence[Sequence[int]] | np.ndarray) -> PruningMatrix:
        arr = np.asarray(array, dtype=np.int64)
        if arr.ndim != 2:
            raise DimensionMismatch("pruning matrix must be 2-D")
        return cls(arr.shape[0] * 2, tuple(int(v) for v in arr.reshape(-1)))

    @classmethod
    def from_index(cls, n_big: int, index: int) -> PruningMatrix:
        """Binary counting order: the first flag is the most significant bit."""
        size = (n_big // 2) * stages_for(n_big)
        if not 0 <= index < (1 << size):
            raise IndexOutOfRange(f"pruning index {index} outside 0..2^{size}-1")
        return cls(n_big, tuple((index >> (size - 1 - f)) & 1 for f in range(size)))

    @property
    def m(self) -> int:
        return stages_for(self.n_big)

    @property
    def half(self) -> int:
        return self.n_big // 2

    @property
    def size(self) -> int:
        return len(self.flags)

    @property
    def index(self) -> int:
        value = 0
        for f in self.flags:
            value = (value << 1) | f
        return value

    @cached_property
    def array(self) -> np.ndarray:
        """Boolean view, shape (N/2, m); column j is stage j+1."""
        return np.array(self.flags, dtype=bool).reshape(self.half, self.m)

    @cached_property
    def kept_masks(self) -> tuple[int, ...]:
        """Per stage, the packed set of lower wires whose butterfly is kept."""
        masks = []
        for stage0 in range(self.m):
            mask = 0
            for row0 in range(self.half):
                if self.flags[row0 * self.m + stage0]:
                    mask |= 1 << _lower_wire(stage0, row0)
            masks.append(mask)
        return tuple(masks)

    @cached_property
    def kept_pairs(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per stage, the 0-indexed (lo, hi) wire pairs of kept butterflies."""
        pairs = []
        for stage0 in range(self.m):
            span = 1 << stage0
            pairs.append(
                tuple(
                    (lo, lo + span)
                    for row0 in range(self.half)
                    if self.flags[row0 * self.m + stage0]
                    for lo in (_lower_wire(stage0, row0),)
                )
            )
        return tuple(pairs)

    def flag(self, row0: int, stage0: int) -> int:
        return self.flags[row0 * self.m + stage0]

    def flipped(self, row0: int, stage0: int) -> PruningMatrix:
        flags = list(self.flags)
        flags[row0 * self.m + stage0] ^= 1
        return PruningMatrix(self.n_big, tuple(flags))

    def stage_mask(self, stage0: int) -> np.ndarray:
        """Kept flags of one stage shaped (blocks, span) to match a reshaped wire vector."""
        span = 1 << stage0
        return self.array[:, stage0].reshape(-1, span)


def encode_word(word: int, pruning: PruningMatrix) -> int:
    """Graph encoding on a packed vector."""
    for stage0, mask in enumerate(pruning.kept_masks):
        word ^= (word >> (1 << stage0)) & mask
    return word


def inverse_word(word: int, pruning: PruningMatrix) -> int:
    """Packed v x G~^-1: every stage is an involution, so run them in reverse."""
    for stage0 in range(pruning.m - 1, -1, -1):
        word ^= (word >> (1 << stage0)) & pruning.kept_masks[stage0]
    return word


def encode_graph(u: Sequence[int] | np.ndarray, pruning: PruningMatrix) -> np.ndarray:
    """Push u through the pruned butterfly graph; equals u x build_generator(R)."""
    x = np.array(u, dtype=np.uint8)
    if x.shape != (pruning.n_big,):
        raise LengthMismatch(f"expected length {pruning.n_big}, got {x.shape}")
    for stage0 in range(pruning.m):
        span = 1 << stage0
        view = x.reshape(-1, 2, span)
        view[:, 0, :] ^= view[:, 1, :] & pruning.stage_mask(stage0)
    return x


@lru_cache(maxsize=4096)
def build_generator(pruning: PruningMatrix) -> BitMatrix:
    """G~ = f(R, G_N): row i is the graph image of the i-th unit vector."""
    n = pruning.n_big
    return BitMatrix(n, n, tuple(encode_word(1 << i, pruning) for i in range(n)))


@lru_cache(maxsize=4096)
def build_inverse_generator(pruning: PruningMatrix) -> BitMatrix:
    n = pruning.n_big
    return BitMatrix(n, n, tuple(inverse_word(1 << i, pruning) for i in range(n)))


@dataclass(frozen=True)
class PrunedPolarCode:
    """Block length N = 2**m with its pruning matrix; the generator is derived lazily."""

    pruning: PruningMatrix

    @property
    def n_big(self) -> int:
        return self.pruning.n_big

    @property
    def gen(self) -> BitMatrix:
        return build_generator(self.pruning)

    @property
    def gen_inv(self) -> BitMatrix:
        return build_inverse_generator(self.pruning)

    def encode(self, u: Sequence[int] | np.ndarray) -> np.ndarray:
        return encode_graph(u, self.pruning)
