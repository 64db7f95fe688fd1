"""Tests for the bundled codes and permutations."""

from pathlib import Path

import pytest

from blbc_polar.errors import ConfigMismatch
from blbc_polar.formats import write_generator
from blbc_polar.gf2 import BitMatrix, Permutation, rank
from blbc_polar.resources import list_codes, list_permutations, load_code, load_permutation


def test_list_codes_includes_bundled_files() -> None:
    names = list_codes()

    assert {"challenging_8_3", "egolay_24_12", "random_16_8"} <= set(names)
    assert names == sorted(names)


def test_list_permutations() -> None:
    assert "random_16_8" in list_permutations()


@pytest.mark.parametrize(
    ("name", "shape"),
    [("challenging_8_3", (3, 8)), ("egolay_24_12", (12, 24)), ("random_16_8", (8, 16))],
)
def test_load_code_shapes(name: str, shape: tuple[int, int]) -> None:
    g = load_code(name)

    assert g.shape == shape
    assert rank(g) == shape[0]


def test_golay_minimum_distance_is_eight(g_golay: BitMatrix) -> None:
    weights = [bin(_codeword(g_golay, m)).count("1") for m in range(1, 1 << 12)]

    assert min(weights) == 8
    assert all(w % 4 == 0 for w in weights)


def _codeword(g: BitMatrix, m: int) -> int:
    word = 0
    for t in range(g.n_rows):
        if (m >> t) & 1:
            word ^= g.rows[t]
    return word


def test_load_code_from_file(tmp_path: Path, g_challenging: BitMatrix) -> None:
    path = tmp_path / "mine.txt"
    write_generator(path, g_challenging)

    assert load_code(str(path)) == g_challenging


def test_load_code_unknown() -> None:
    with pytest.raises(ConfigMismatch):
        load_code("no_such_code")


def test_load_permutation(perm_random_16_8: Permutation) -> None:
    assert perm_random_16_8.one_line()[:4] == [16, 4, 14, 10]


def test_load_permutation_unknown() -> None:
    with pytest.raises(ConfigMismatch):
        load_permutation("missing.perm")
