"""Tests for scl_decode."""

import numpy as np
import pytest

from blbc_polar.decoder import (
    DecodeResult,
    correlation,
    mld,
    prepare_llr,
    sc_decode,
    scl_decode,
)
from blbc_polar.errors import ParamOutOfRange
from blbc_polar.gf2 import BitMatrix
from blbc_polar.transform import Transformation, build_transformation
from tests.conftest import random_permutation, random_pruning


def test_scl_decode_list_of_one_matches_sc(
    golay_transformation: Transformation, rng: np.random.Generator
) -> None:
    t = golay_transformation
    for _ in range(20):
        llr = prepare_llr(rng.normal(loc=1.0, scale=1.5, size=24), t)

        sc = sc_decode(llr, t)
        scl = scl_decode(llr, t, 1)

        assert isinstance(scl, DecodeResult)
        assert np.array_equal(scl.u, sc.u)
        assert scl.path_metric == pytest.approx(sc.path_metric)


def test_scl_decode_return_list_is_sorted(
    golay_transformation: Transformation, rng: np.random.Generator
) -> None:
    # Arrange
    llr = prepare_llr(rng.normal(loc=1.0, scale=1.5, size=24), golay_transformation)

    # Act
    paths = scl_decode(llr, golay_transformation, 8, return_list=True)

    # Assert
    assert isinstance(paths, list)
    assert len(paths) == 8
    metrics = [p.path_metric for p in paths]
    assert metrics == sorted(metrics)
    assert [p.list_rank for p in paths] == list(range(8))
    assert len({p.message.tobytes() for p in paths}) == 8


def test_scl_decode_full_list_is_maximum_likelihood(
    g_challenging: BitMatrix, rng: np.random.Generator
) -> None:
    for _ in range(20):
        # Arrange
        t = build_transformation(
            g_challenging, 8, random_permutation(rng, 8), random_pruning(rng, 8)
        )
        frames = rng.normal(loc=0.5, scale=2.0, size=(50, 8))

        for y in frames:
            # Act
            scl = scl_decode(prepare_llr(y, t), t, 8)
            ml = mld(y, g_challenging)

            # Assert
            assert isinstance(scl, DecodeResult)
            assert correlation(scl.codeword, y) == pytest.approx(correlation(ml.codeword, y))


def test_scl_decode_rejects_empty_list(golay_transformation: Transformation) -> None:
    with pytest.raises(ParamOutOfRange):
        scl_decode(np.zeros(32), golay_transformation, 0)
