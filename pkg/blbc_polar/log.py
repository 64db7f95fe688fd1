"""Logging for long searches and simulations.

Lines look like

    [chain-3] 2026-01-01 12:00:00,000 - blbc_polar - INFO - ANNEAL_END | best=0.055360

The bracketed id names the annealing chain or SNR point that emitted the line.
"""

from __future__ import annotations

import logging
import os
import sys
from contextlib import contextmanager
from contextvars import ContextVar
from enum import Enum
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any, Iterator, Optional

_transaction_id: ContextVar[str] = ContextVar("transaction_id", default="")

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_MAX_BYTES = 1024 * 1024
LOG_BACKUP_COUNT = 10


def get_log_root() -> Path:
    """$LOG_ROOT, or ./logs under the working directory."""
    root = os.environ.get("LOG_ROOT")
    return Path(root) if root else Path.cwd() / "logs"


def get_transaction_id() -> str:
    return _transaction_id.get()


@contextmanager
def transaction(transaction_id: str) -> Iterator[None]:
    """Tag log lines with transaction_id inside the block, restoring the previous id after."""
    token = _transaction_id.set(transaction_id)
    try:
        yield
    finally:
        _transaction_id.reset(token)


def _render(value: Any) -> str:
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, float):
        return f"{value:g}"
    return str(value)


class ReadableFormatter(logging.Formatter):
    """Plain text with the transaction id in front and event fields behind."""

    def __init__(self) -> None:
        super().__init__(LOG_FORMAT)

    def format(self, record: logging.LogRecord) -> str:
        line = super().format(record)
        if tid := get_transaction_id():
            line = f"[{tid}] {line}"
        fields: dict[str, Any] = getattr(record, "fields", None) or {}
        if fields:
            line += " | " + " ".join(f"{k}={_render(v)}" for k, v in fields.items())
        return line


def get_logger(
    name: str,
    add_file_handler: bool = False,
    log_filename: Optional[str] = None,
    level: int = logging.WARNING,
) -> logging.Logger:
    """Logger writing to stderr, so stdout carries only command output.

    Configured once per name. With add_file_handler a rotating file
    (1 MB, 10 backups) named log_filename or {name}.log is added under
    get_log_root(); if it cannot be created the logger stays stderr-only.
    """
    logger = logging.getLogger(name)
    if logger.handlers:
        return logger

    formatter = ReadableFormatter()
    console = logging.StreamHandler(sys.stderr)
    console.setFormatter(formatter)
    logger.addHandler(console)

    if add_file_handler:
        path = get_log_root() / (log_filename or f"{name}.log")
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            file_handler = RotatingFileHandler(
                path, maxBytes=LOG_MAX_BYTES, backupCount=LOG_BACKUP_COUNT, encoding="utf-8"
            )
        except OSError as e:
            logger.warning("cannot open log file %s: %s", path, e)
        else:
            file_handler.setFormatter(formatter)
            logger.addHandler(file_handler)

    logger.setLevel(level)
    logger.propagate = False
    return logger


class StructuredLogger:
    """Emits EVENT_NAME lines with key=value fields on an injected logger."""

    def __init__(self, logger: logging.Logger) -> None:
        self._logger = logger

    def event(self, level: int, name: str, **fields: Any) -> None:
        if self._logger.isEnabledFor(level):
            self._logger.log(level, name, extra={"fields": fields})

    def debug(self, name: str, **fields: Any) -> None:
        self.event(logging.DEBUG, name, **fields)

    def info(self, name: str, **fields: Any) -> None:
        self.event(logging.INFO, name, **fields)

    def warning(self, name: str, **fields: Any) -> None:
        self.event(logging.WARNING, name, **fields)
