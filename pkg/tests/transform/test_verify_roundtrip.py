"""Tests for verify_roundtrip."""

import dataclasses

from blbc_polar.gf2 import BitMatrix, Permutation
from blbc_polar.polarlike import PruningMatrix
from blbc_polar.transform import Transformation, build_transformation, verify_roundtrip


def test_verify_roundtrip_identity_passes() -> None:
    t = build_transformation(
        BitMatrix.identity(8), 8, Permutation.identity(8), PruningMatrix.all_zeros(8)
    )

    report = verify_roundtrip(t, 100)

    assert report.passed
    assert report.trials == 100


def test_verify_roundtrip_golay_passes(golay_transformation: Transformation) -> None:
    report = verify_roundtrip(golay_transformation, 1000)

    assert report.passed
    assert report.first_failure is None


def test_verify_roundtrip_reports_corrupted_mdf(golay_transformation: Transformation) -> None:
    # Arrange
    t = golay_transformation
    rows = list(t.m_df.rows)
    free = next(c for c in range(t.n_big) if c not in t.info_set)
    rows[0] ^= 1 << free
    broken = dataclasses.replace(t, m_df=BitMatrix(t.k, t.n_big, tuple(rows)))

    # Act
    report = verify_roundtrip(broken, 100)

    # Assert
    assert not report.passed
    assert report.first_failure is not None
    assert report.first_failure.kind in {"codeword", "shortened"}
    assert len(report.first_failure.message) == 12


def test_verify_roundtrip_is_seeded(golay_transformation: Transformation) -> None:
    a = verify_roundtrip(golay_transformation, 10, seed=7)
    b = verify_roundtrip(golay_transformation, 10, seed=7)

    assert a == b
    assert a.failures == 0
