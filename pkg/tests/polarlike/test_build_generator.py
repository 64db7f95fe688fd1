"""Tests for build_generator."""

from functools import reduce

import numpy as np
import pytest
from hypothesis import given, settings

from blbc_polar.gf2 import F2, BitMatrix, invert, matmul
from blbc_polar.polarlike import (
    PrunedPolarCode,
    PruningMatrix,
    build_generator,
    encode_graph,
)
from tests.conftest import random_pruning, seeds

EXAMPLE_PRUNING = [[0, 1, 1], [1, 1, 0], [1, 0, 1], [0, 1, 1]]


def test_build_generator_single_kernel() -> None:
    assert build_generator(PruningMatrix.all_ones(2)) == F2


@pytest.mark.parametrize("n_big", [2, 4, 8, 16])
def test_build_generator_all_ones_is_kronecker_power(n_big: int) -> None:
    m = n_big.bit_length() - 1
    expected = reduce(lambda acc, _: acc.kron(F2), range(m - 1), F2)

    assert build_generator(PruningMatrix.all_ones(n_big)) == expected


@pytest.mark.parametrize("n_big", [2, 8, 32])
def test_build_generator_all_zeros_is_identity(n_big: int) -> None:
    assert build_generator(PruningMatrix.all_zeros(n_big)) == BitMatrix.identity(n_big)


def test_build_generator_example_pruning() -> None:
    # Arrange
    pruning = PruningMatrix.from_array(EXAMPLE_PRUNING)

    # Act
    g = build_generator(pruning)

    # Assert
    assert pruning.array.sum(axis=0).tolist() == [2, 3, 3]
    assert g.is_lower_unitriangular()
    for i in range(8):
        e = np.zeros(8, dtype=np.uint8)
        e[i] = 1
        assert np.array_equal(g.row(i), encode_graph(e, pruning))
    assert invert(g) is not None
    assert g != build_generator(PruningMatrix.all_ones(8))


@given(seed=seeds)
@settings(max_examples=40, deadline=None)
def test_build_generator_flip_keeps_unit_lower_triangular(seed: int) -> None:
    # Arrange
    rng = np.random.default_rng(seed)
    pruning = random_pruning(rng, 16)
    flag = int(rng.integers(pruning.size))

    # Act
    flipped = pruning.flipped(flag // pruning.m, flag % pruning.m)

    # Assert
    assert build_generator(pruning).is_lower_unitriangular()
    assert build_generator(flipped).is_lower_unitriangular()
    assert build_generator(flipped) != build_generator(pruning)


@given(seed=seeds)
@settings(max_examples=25, deadline=None)
def test_pruned_polar_code_inverse_generator(seed: int) -> None:
    # Arrange
    rng = np.random.default_rng(seed)
    code = PrunedPolarCode(random_pruning(rng, 16))
    u = rng.integers(0, 2, size=16).astype(np.uint8)

    # Act
    gen, gen_inv = code.gen, code.gen_inv

    # Assert
    assert code.n_big == 16
    assert gen_inv == invert(gen)
    assert matmul(gen, gen_inv) == BitMatrix.identity(16)
    assert np.array_equal(code.encode(u), gen.vecmul(u))
