"""Bhattacharyya-parameter propagation through the pruned, shortened graph."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from blbc_polar.errors import LengthMismatch, ParamOutOfRange
from blbc_polar.models import RELIABILITY_TOL, ChannelKind
from blbc_polar.polarlike import PruningMatrix
from blbc_polar.transform import Transformation

# Per-synthesized-channel Z values, each in [0, 1].
ReliabilityVector = np.ndarray


@dataclass(frozen=True)
class ChannelParam:
    """A binary memoryless symmetric channel.

    value is the crossover probability (BSC), the erasure probability (BEC)
    or Eb/N0 in dB (BiAWGN, which also needs the code rate).
    """

    kind: ChannelKind
    value: float
    rate: float = 1.0

    def __post_init__(self) -> None:
        if self.kind is ChannelKind.BSC and not 0.0 <= self.value <= 0.5:
            raise ParamOutOfRange(f"BSC crossover {self.value} outside [0, 0.5]")
        if self.kind is ChannelKind.BEC and not 0.0 <= self.value <= 1.0:
            raise ParamOutOfRange(f"BEC erasure probability {self.value} outside [0, 1]")
        if self.kind is ChannelKind.BIAWGN:
            if not 0.0 < self.rate <= 1.0:
                raise ParamOutOfRange(f"code rate {self.rate} outside (0, 1]")
            if not math.isfinite(self.value):
                raise ParamOutOfRange("Eb/N0 must be finite")

    @classmethod
    def bsc(cls, p: float) -> ChannelParam:
        return cls(ChannelKind.BSC, p)

    @classmethod
    def bec(cls, epsilon: float) -> ChannelParam:
        return cls(ChannelKind.BEC, epsilon)

    @classmethod
    def biawgn(cls, ebno_db: float, rate: float) -> ChannelParam:
        return cls(ChannelKind.BIAWGN, ebno_db, rate)

    def __str__(self) -> str:
        if self.kind is ChannelKind.BIAWGN:
            return f"biawgn(ebno_db={self.value}, rate={self.rate:.4f})"
        return f"{self.kind.value}({self.value})"


def channel_z(c: ChannelParam) -> float:
    """Bhattacharyya parameter of the raw channel."""
    if c.kind is ChannelKind.BSC:
        return 2.0 * math.sqrt(c.value * (1.0 - c.value))
    if c.kind is ChannelKind.BEC:
        return c.value
    return math.exp(-c.rate * 10.0 ** (c.value / 10.0))


def initial_z(c: ChannelParam, t: Transformation) -> ReliabilityVector:
    """Channel Z on kept positions, 0 on shortened ones, mapped back through P^-1."""
    z = np.full(t.n_big, channel_z(c), dtype=np.float64)
    z[list(t.shorten.dropped)] = 0.0
    return t.perm.apply_inverse(z)


def propagate_z(zin: ReliabilityVector, pruning: PruningMatrix) -> ReliabilityVector:
    """Run the Z recursion from the channel side (stage m) to the u side (stage 1).

    Kept butterfly: lower wire gets za + zb - za*zb, upper wire gets za*zb.
    Pruned butterfly: both values pass through.
    """
    z = np.array(zin, dtype=np.float64)
    if z.shape != (pruning.n_big,):
        raise LengthMismatch(f"expected length {pruning.n_big}, got {z.shape}")
    if np.any(z < -RELIABILITY_TOL) or np.any(z > 1.0 + RELIABILITY_TOL):
        raise ParamOutOfRange("Z values must lie in [0, 1]")
    for stage0 in range(pruning.m - 1, -1, -1):
        view = z.reshape(-1, 2, 1 << stage0)
        za = view[:, 0, :].copy()
        zb = view[:, 1, :].copy()
        kept = pruning.stage_mask(stage0)
        view[:, 0, :] = np.where(kept, za + zb - za * zb, za)
        view[:, 1, :] = np.where(kept, za * zb, zb)
        np.clip(z, 0.0, 1.0, out=z)
    return z


def info_z(c: ChannelParam, t: Transformation) -> np.ndarray:
    """Z values at the information positions, in position order."""
    z = propagate_z(initial_z(c, t), t.pruning)
    return z[list(t.info_set)]


def cost(c: ChannelParam, t: Transformation) -> float:
    """Sum of Z over the information set: the union bound minimised by the search."""
    return float(info_z(c, t).sum())
