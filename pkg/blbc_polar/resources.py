"""Bundled generator matrices and permutations."""

from __future__ import annotations

from pathlib import Path

from blbc_polar.constructions import constructed_code
from blbc_polar.errors import ConfigMismatch
from blbc_polar.formats import parse_permutation, read_generator
from blbc_polar.gf2 import BitMatrix, Permutation

# Installed: blbc_polar/codes/ (hatchling force-include). Development: repo-root codes/.
_pkg_codes = Path(__file__).parent / "codes"
_repo_codes = Path(__file__).parent.parent / "codes"
CODES_DIR = _pkg_codes if _pkg_codes.exists() else _repo_codes

CODE_SUFFIX = ".txt"
PERM_SUFFIX = ".perm"


def list_codes() -> list[str]:
    """Sorted names of the bundled generator matrices."""
    if not CODES_DIR.exists():
        return []
    return sorted(p.stem for p in CODES_DIR.glob(f"*{CODE_SUFFIX}"))


def list_permutations() -> list[str]:
    if not CODES_DIR.exists():
        return []
    return sorted(p.stem for p in CODES_DIR.glob(f"*{PERM_SUFFIX}"))


def get_code_path(name: str) -> Path:
    return CODES_DIR / f"{name}{CODE_SUFFIX}"


def load_code(name_or_path: str) -> BitMatrix:
    """A bundled name, a construction such as 'ebch_128_57', or a file path."""
    if name_or_path in list_codes():
        return read_generator(get_code_path(name_or_path))
    if (g := constructed_code(name_or_path)) is not None:
        return g
    path = Path(name_or_path)
    if path.is_file():
        return read_generator(path)
    raise ConfigMismatch(f"unknown code '{name_or_path}'")


def load_permutation(name_or_path: str) -> Permutation:
    if name_or_path in list_permutations():
        path = CODES_DIR / f"{name_or_path}{PERM_SUFFIX}"
    else:
        path = Path(name_or_path)
        if not path.is_file():
            raise ConfigMismatch(f"unknown permutation '{name_or_path}'")
    return parse_permutation(path.read_text(encoding="utf-8"))
