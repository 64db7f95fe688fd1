"""Tests for sc_decode."""

import numpy as np
import pytest

from blbc_polar.decoder import Decoder, prepare_llr, sc_decode
from blbc_polar.errors import LengthMismatch
from blbc_polar.gf2 import BitMatrix, Permutation, parity, pack_bits
from blbc_polar.models import LLR_SHORTENED, DecoderKind, KernelMode
from blbc_polar.polarlike import PruningMatrix, butterfly_map
from blbc_polar.transform import ShortenSpec, Transformation, build_transformation
from tests.conftest import random_transformation


@pytest.mark.parametrize("kernel", list(KernelMode))
def test_sc_decode_noiseless_recovers_message(
    rng: np.random.Generator, kernel: KernelMode
) -> None:
    for n_big, n, k in [(8, 8, 3), (16, 12, 6), (32, 24, 12), (32, 32, 16)]:
        t = random_transformation(rng, n_big, n, k)
        for _ in range(10):
            # Arrange
            m = rng.integers(0, 2, size=k).astype(np.uint8)
            c = t.g.vecmul(m)
            llr = prepare_llr(LLR_SHORTENED * (1.0 - 2.0 * c), t)

            # Act
            result = sc_decode(llr, t, kernel)

            # Assert
            assert np.array_equal(result.message, m)
            assert np.array_equal(result.codeword, c)


def test_sc_decode_satisfies_frozen_constraints(
    golay_transformation: Transformation, rng: np.random.Generator
) -> None:
    t = golay_transformation
    for _ in range(20):
        llr = prepare_llr(rng.normal(scale=2.0, size=24), t)

        result = sc_decode(llr, t)

        assert result.u is not None
        u_word = pack_bits(result.u)
        for i in range(t.n_big):
            if not t.frozen.is_info(i):
                assert result.u[i] == parity(u_word & t.frozen.refs[i])
        assert np.array_equal(result.u, t.u_from_message(result.message))
        assert np.array_equal(result.codeword, t.g.vecmul(result.message))


def test_sc_decode_dimension_zero_code() -> None:
    t = build_transformation(
        BitMatrix(0, 6, ()),
        8,
        Permutation.identity(8),
        PruningMatrix.all_ones(8),
        ShortenSpec.last(8, 6),
    )

    result = Decoder(DecoderKind.SC, t).decode(np.full(6, -3.0))

    assert result.message.shape == (0,)
    assert not result.codeword.any()


def test_sc_decode_length_mismatch(golay_transformation: Transformation) -> None:
    with pytest.raises(LengthMismatch):
        sc_decode(np.zeros(24), golay_transformation)


def _rate_one(pruning: PruningMatrix) -> Transformation:
    n_big = pruning.n_big
    return build_transformation(
        BitMatrix.identity(n_big), n_big, Permutation.identity(n_big), pruning
    )


@pytest.mark.parametrize("stage", [1, 2, 3, 4])
def test_sc_decode_pruned_butterfly_ignores_other_wire(
    rng: np.random.Generator, stage: int
) -> None:
    # Arrange: stages above `stage` pruned, so that stage sees the channel LLRs
    flags = (rng.random((8, 4)) < 0.5).astype(int)
    flags[:, stage:] = 0
    row = int(rng.integers(8))
    flags[row, stage - 1] = 0
    t = _rate_one(PruningMatrix.from_array(flags))
    lo, hi = butterfly_map(16, stage, row + 1)
    start = ((lo - 1) >> stage) << stage
    lower_half = slice(start, start + (1 << (stage - 1)))
    llr = rng.normal(loc=0.5, scale=2.0, size=16)
    reference = sc_decode(llr, t).u

    for value in (-8.0, -1.0, 0.5, 8.0):
        # Act
        perturbed = llr.copy()
        perturbed[hi - 1] = value
        u = sc_decode(perturbed, t).u

        # Assert
        assert np.array_equal(u[lower_half], reference[lower_half])


def test_sc_decode_kept_butterfly_uses_other_wire() -> None:
    t = _rate_one(PruningMatrix.all_ones(2))

    strong_zero = sc_decode(np.array([1.0, 5.0]), t).u
    strong_one = sc_decode(np.array([1.0, -5.0]), t).u

    assert strong_zero[0] != strong_one[0]
