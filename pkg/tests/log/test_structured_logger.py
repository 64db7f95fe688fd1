"""Tests for the logging helpers."""

import io
import logging

import pytest

from blbc_polar.log import (
    LOG_BACKUP_COUNT,
    ReadableFormatter,
    StructuredLogger,
    get_logger,
    get_transaction_id,
    transaction,
)
from blbc_polar.models import DecoderKind


@pytest.fixture
def captured() -> tuple[logging.Logger, io.StringIO]:
    stream = io.StringIO()
    handler = logging.StreamHandler(stream)
    handler.setFormatter(ReadableFormatter())
    logger = logging.getLogger("tests.structured")
    logger.handlers = [handler]
    logger.setLevel(logging.INFO)
    logger.propagate = False
    return logger, stream


def test_structured_logger_appends_fields(captured: tuple[logging.Logger, io.StringIO]) -> None:
    # Arrange
    logger, stream = captured

    # Act
    with transaction("chain-7"):
        StructuredLogger(logger).info("ANNEAL_END", best="0.055360", accepted=12)

    # Assert
    line = stream.getvalue().strip()
    assert line.startswith("[chain-7] ")
    assert "INFO - ANNEAL_END | best=0.055360 accepted=12" in line


def test_structured_logger_respects_level(captured: tuple[logging.Logger, io.StringIO]) -> None:
    logger, stream = captured

    StructuredLogger(logger).debug("EXHAUSTIVE_CHUNK", done=1)

    assert stream.getvalue() == ""


def test_transaction_restores_outer_id() -> None:
    with transaction("search"):
        with transaction("ebno-2.5"):
            inner = get_transaction_id()
        outer = get_transaction_id()

    assert inner == "ebno-2.5"
    assert outer == "search"
    assert get_transaction_id() == ""


def test_get_logger_writes_file_under_log_root(
    tmp_path, monkeypatch: pytest.MonkeyPatch
) -> None:
    monkeypatch.setenv("LOG_ROOT", str(tmp_path))

    logger = get_logger("tests.file_logger", add_file_handler=True, level=logging.INFO)
    logger.info("hello")
    for h in logger.handlers:
        h.flush()

    assert "hello" in (tmp_path / "tests.file_logger.log").read_text()
    for h in list(logger.handlers):
        h.close()
        logger.removeHandler(h)


def test_structured_logger_renders_enums_and_floats(
    captured: tuple[logging.Logger, io.StringIO],
) -> None:
    # Arrange
    logger, stream = captured

    # Act
    StructuredLogger(logger).info("SIM_POINT_START", ebno_db=2.5, decoder=DecoderKind.SCL)

    # Assert
    assert stream.getvalue().strip().endswith("SIM_POINT_START | ebno_db=2.5 decoder=scl")


def test_get_logger_configures_once(tmp_path, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("LOG_ROOT", str(tmp_path))

    first = get_logger("tests.configured_once", add_file_handler=True)
    second = get_logger("tests.configured_once", add_file_handler=True)

    assert first is second
    assert len(first.handlers) == 2
    rotating = [h for h in first.handlers if hasattr(h, "backupCount")]
    assert rotating[0].backupCount == LOG_BACKUP_COUNT
    for h in list(first.handlers):
        h.close()
        first.removeHandler(h)
