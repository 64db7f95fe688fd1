"""Tests for the YAML config layer."""

from pathlib import Path

import pytest

from blbc_polar.config import (
    load_anneal_config,
    load_sim_config,
    save_anneal_config,
    save_sim_config,
    with_overrides,
)
from blbc_polar.errors import ConfigMismatch
from blbc_polar.models import AnnealConfig, DecoderKind, MovePolicy, SimConfig


def test_anneal_config_round_trip(tmp_path: Path) -> None:
    # Arrange
    path = tmp_path / "anneal.yaml"
    cfg = AnnealConfig(t_max=5000, gamma=0.999, seed=4, move_policy=MovePolicy.UNIFORM)

    # Act
    save_anneal_config(path, cfg)
    loaded = load_anneal_config(path)

    # Assert
    assert loaded == cfg
    assert "move_policy: uniform" in path.read_text()


def test_anneal_config_missing_file_gives_defaults(tmp_path: Path) -> None:
    cfg = load_anneal_config(tmp_path / "absent.yaml")

    assert cfg == AnnealConfig()
    assert cfg.gamma == 0.99999
    assert cfg.t_max == 1_000_000


@pytest.mark.parametrize(
    "text",
    ["gamma: 1.5\n", "t_init: 0\n", "unknown_key: 1\n", "- a list\n", "search_perm: false\nsearch_pruning: false\n"],
)
def test_anneal_config_invalid(tmp_path: Path, text: str) -> None:
    path = tmp_path / "bad.yaml"
    path.write_text(text)

    with pytest.raises(ConfigMismatch):
        load_anneal_config(path)


def test_sim_config_round_trip(tmp_path: Path) -> None:
    path = tmp_path / "sim.yaml"
    cfg = SimConfig(
        code="egolay_24_12",
        transformation="golay.tf",
        decoder=DecoderKind.SCL,
        list_size=8,
        ebno_db=[1.0, 2.0, 3.0],
    )

    save_sim_config(path, cfg)

    assert load_sim_config(path) == cfg


def test_sim_config_missing_file(tmp_path: Path) -> None:
    with pytest.raises(ConfigMismatch):
        load_sim_config(tmp_path / "absent.yaml")


def test_sim_config_requires_snr_grid(tmp_path: Path) -> None:
    path = tmp_path / "sim.yaml"
    path.write_text("code: egolay_24_12\ntransformation: golay.tf\nebno_db: []\n")

    with pytest.raises(ConfigMismatch):
        load_sim_config(path)


def test_with_overrides_skips_none() -> None:
    cfg = with_overrides(AnnealConfig(), t_max=10, gamma=None)

    assert cfg.t_max == 10
    assert cfg.gamma == AnnealConfig().gamma


def test_with_overrides_validates() -> None:
    with pytest.raises(ConfigMismatch):
        with_overrides(AnnealConfig(), gamma=2.0)
