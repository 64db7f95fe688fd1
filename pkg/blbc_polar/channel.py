"""BPSK over AWGN: noise variance, LLRs and the uncoded baseline."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np
from scipy.stats import norm

from blbc_polar.errors import ParamOutOfRange


def noise_variance(ebno_db: float, rate: float) -> float:
    """sigma^2 = 1 / (2 R Eb/N0) for unit-energy BPSK."""
    if not 0.0 < rate <= 1.0:
        raise ParamOutOfRange(f"code rate {rate} outside (0, 1]")
    if not math.isfinite(ebno_db):
        raise ParamOutOfRange("Eb/N0 must be finite")
    return 1.0 / (2.0 * rate * 10.0 ** (ebno_db / 10.0))


def awgn_llr(
    codeword: Sequence[int] | np.ndarray,
    ebno_db: float,
    rate: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """Map 0 -> +1, 1 -> -1, add Gaussian noise and return LLR = 2y / sigma^2.

    Accepts one codeword or a (frames, n) batch.
    """
    sigma2 = noise_variance(ebno_db, rate)
    x = 1.0 - 2.0 * np.asarray(codeword, dtype=np.float64)
    y = x + rng.normal(0.0, math.sqrt(sigma2), size=x.shape)
    return 2.0 * y / sigma2


def uncoded_ber(ebno_db: float) -> float:
    """Q(sqrt(2 Eb/N0))."""
    return float(norm.sf(math.sqrt(2.0 * 10.0 ** (ebno_db / 10.0))))


def uncoded_fer(k: int, ebno_db: float) -> float:
    """Probability that at least one of k uncoded bits is in error."""
    return 1.0 - (1.0 - uncoded_ber(ebno_db)) ** k
