"""Tests for the codebook MLD decoder."""

import tracemalloc

import numpy as np
import pytest

from blbc_polar.decoder import MldDecoder, correlation, mld
from blbc_polar.errors import DimensionTooLarge, LengthMismatch
from blbc_polar.gf2 import BitMatrix
from tests.conftest import random_generator


def test_mld_tie_keeps_zero_message(g_golay: BitMatrix) -> None:
    result = mld(np.zeros(24), g_golay)

    assert not result.message.any()
    assert not result.codeword.any()


def test_mld_noiseless(g_golay: BitMatrix, rng: np.random.Generator) -> None:
    m = rng.integers(0, 2, size=12).astype(np.uint8)
    c = g_golay.vecmul(m)

    result = mld(4.0 * (1.0 - 2.0 * c), g_golay)

    assert np.array_equal(result.message, m)
    assert np.array_equal(result.codeword, c)


def test_mld_beats_every_codeword(g_challenging: BitMatrix, rng: np.random.Generator) -> None:
    y = rng.normal(size=8)

    result = mld(y, g_challenging)

    best = correlation(result.codeword, y)
    decoder = MldDecoder(g_challenging)
    _, code = decoder.codebook(0, decoder.size)
    assert all(correlation(c, y) <= best + 1e-12 for c in code)


def test_mld_chunked_scan_matches_cached(
    g_golay: BitMatrix, rng: np.random.Generator, monkeypatch: pytest.MonkeyPatch
) -> None:
    # Arrange
    llrs = rng.normal(loc=0.5, scale=2.0, size=(50, 24))
    cached = MldDecoder(g_golay).decode_batch(llrs)
    monkeypatch.setattr(MldDecoder, "CACHE_LIMIT", 0)
    monkeypatch.setattr(MldDecoder, "CHUNK", 100)

    # Act
    chunked = MldDecoder(g_golay).decode_batch(llrs)

    # Assert
    assert np.array_equal(chunked[0], cached[0])
    assert np.array_equal(chunked[1], cached[1])


@pytest.mark.parametrize("cache_limit", [MldDecoder.CACHE_LIMIT, 0])
def test_mld_frame_blocks_match_single_block(
    g_golay: BitMatrix,
    rng: np.random.Generator,
    monkeypatch: pytest.MonkeyPatch,
    cache_limit: int,
) -> None:
    # Arrange
    llrs = rng.normal(loc=0.5, scale=2.0, size=(37, 24))
    monkeypatch.setattr(MldDecoder, "CACHE_LIMIT", cache_limit)
    whole = MldDecoder(g_golay).decode_batch(llrs)
    monkeypatch.setattr(MldDecoder, "SCORE_LIMIT", 5 * 4096)

    # Act
    blocked = MldDecoder(g_golay).decode_batch(llrs)

    # Assert
    assert np.array_equal(blocked[0], whole[0])
    assert np.array_equal(blocked[1], whole[1])


def test_mld_batch_memory_is_bounded(rng: np.random.Generator) -> None:
    # Arrange
    decoder = MldDecoder(random_generator(rng, 16, 32))
    llrs = rng.normal(size=(500, 32))

    # Act
    tracemalloc.start()
    try:
        messages, _ = decoder.decode_batch(llrs)
        _, peak = tracemalloc.get_traced_memory()
    finally:
        tracemalloc.stop()

    # Assert
    assert messages.shape == (500, 16)
    assert peak < 128 * 2**20


def test_mld_messages_are_lexicographic(g_challenging: BitMatrix) -> None:
    msgs = MldDecoder(g_challenging).messages(0, 8)

    assert msgs[1].tolist() == [0, 0, 1]
    assert msgs[4].tolist() == [1, 0, 0]


def test_mld_dimension_too_large() -> None:
    with pytest.raises(DimensionTooLarge):
        MldDecoder(BitMatrix.identity(25))


def test_mld_length_mismatch(g_challenging: BitMatrix) -> None:
    with pytest.raises(LengthMismatch):
        mld(np.zeros(5), g_challenging)
