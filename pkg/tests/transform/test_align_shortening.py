"""Tests for align_shortening."""

import numpy as np

from blbc_polar.transform import (
    ShortenSpec,
    align_shortening,
    build_transformation,
    encode_via_transform,
)
from tests.conftest import random_generator, random_permutation, random_pruning


def test_align_shortening_gives_same_code(rng: np.random.Generator) -> None:
    for _ in range(10):
        # Arrange
        g = random_generator(rng, 3, 6)
        perm = random_permutation(rng, 8)
        pruning = random_pruning(rng, 8)
        source = ShortenSpec.last(8, 6)
        target = ShortenSpec.from_dropped(8, sorted(rng.choice(8, size=2, replace=False)))

        # Act
        q = align_shortening(source, target)
        a = build_transformation(g, 8, perm, pruning, source)
        b = build_transformation(g, 8, perm.then(q), pruning, target)

        # Assert
        assert a.m_df == b.m_df
        assert a.info_set == b.info_set
        for m in rng.integers(0, 2, size=(20, 3)).astype(np.uint8):
            assert np.array_equal(encode_via_transform(m, b), g.vecmul(m))


def test_align_shortening_same_spec_is_identity() -> None:
    spec = ShortenSpec.last(16, 12)

    assert align_shortening(spec, spec).p == tuple(range(16))
