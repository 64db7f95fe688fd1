"""Fixtures for the end-to-end CLI tests."""

from pathlib import Path

import pytest
from typer.testing import CliRunner

from blbc_polar.formats import write_transformation
from blbc_polar.gf2 import BitMatrix, Permutation
from blbc_polar.polarlike import PruningMatrix
from blbc_polar.transform import build_transformation


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture
def identity_tf(tmp_path: Path, g_challenging: BitMatrix) -> Path:
    """The (8, 3) code with P = identity and every butterfly pruned (G~ = I)."""
    path = tmp_path / "identity.tf"
    t = build_transformation(
        g_challenging, 8, Permutation.identity(8), PruningMatrix.all_zeros(8)
    )
    write_transformation(path, t)
    return path
