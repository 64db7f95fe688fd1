"""Global fixtures and hypothesis strategies."""

from __future__ import annotations

import logging

import numpy as np
import pytest
from hypothesis import strategies as st

from blbc_polar.gf2 import BitMatrix, Permutation
from blbc_polar.polarlike import PruningMatrix
from blbc_polar.reliability import ChannelParam
from blbc_polar.resources import load_code, load_permutation
from blbc_polar.transform import ShortenSpec, Transformation, build_transformation

BSC_001_Z = 0.198997


def random_generator(rng: np.random.Generator, k: int, n: int) -> BitMatrix:
    """Full-rank k x n: [I | A] with its columns shuffled."""
    a = rng.integers(0, 2, size=(k, n - k))
    g = np.hstack([np.eye(k, dtype=np.int64), a])
    return BitMatrix.from_array(g[:, rng.permutation(n)])


def random_permutation(rng: np.random.Generator, n: int) -> Permutation:
    return Permutation(tuple(int(v) for v in rng.permutation(n)))


def random_pruning(rng: np.random.Generator, n_big: int, p_keep: float = 0.5) -> PruningMatrix:
    m = n_big.bit_length() - 1
    flags = (rng.random((n_big // 2) * m) < p_keep).astype(int)
    return PruningMatrix(n_big, tuple(int(f) for f in flags))


def random_transformation(
    rng: np.random.Generator, n_big: int, n: int, k: int, p_keep: float = 0.5
) -> Transformation:
    """Random code, permutation and pruning; the last N - n positions shortened."""
    return build_transformation(
        random_generator(rng, k, n),
        n_big,
        random_permutation(rng, n_big),
        random_pruning(rng, n_big, p_keep),
        ShortenSpec.last(n_big, n),
    )


@st.composite
def transformation_shapes(draw: st.DrawFn, max_m: int = 5) -> tuple[int, int, int]:
    """(N, n, k) with N = 2^m, 1 <= k <= n <= N."""
    m = draw(st.integers(min_value=1, max_value=max_m))
    n_big = 1 << m
    n = draw(st.integers(min_value=max(1, n_big // 2), max_value=n_big))
    k = draw(st.integers(min_value=1, max_value=n))
    return n_big, n, k


seeds = st.integers(min_value=0, max_value=2**32 - 1)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def logger() -> logging.Logger:
    return logging.getLogger("blbc_polar.tests")


@pytest.fixture
def g_challenging() -> BitMatrix:
    """The (8, 3) challenging-case generator."""
    return load_code("challenging_8_3")


@pytest.fixture
def g_golay() -> BitMatrix:
    return load_code("egolay_24_12")


@pytest.fixture
def g_random_16_8() -> BitMatrix:
    return load_code("random_16_8")


@pytest.fixture
def perm_random_16_8() -> Permutation:
    return load_permutation("random_16_8")


@pytest.fixture
def bsc_001() -> ChannelParam:
    return ChannelParam.bsc(0.01)


@pytest.fixture
def m_df_two_three() -> BitMatrix:
    """Dynamic-frozen matrix with pivots 2, 3, 5 and u4 = u2 + u3 (1-indexed)."""
    return BitMatrix.from_array(
        [
            [0, 1, 0, 1, 0, 0, 0, 0],
            [0, 0, 1, 1, 0, 0, 0, 0],
            [0, 0, 0, 0, 1, 0, 0, 0],
        ]
    )


@pytest.fixture
def golay_transformation(g_golay: BitMatrix, rng: np.random.Generator) -> Transformation:
    """eGolay on N=32 with positions 25..32 shortened."""
    return build_transformation(
        g_golay,
        32,
        random_permutation(rng, 32),
        random_pruning(rng, 32),
        ShortenSpec.last(32, 24),
    )
