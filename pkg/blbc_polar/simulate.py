"""Monte Carlo FER evaluation over BPSK/AWGN.

Frames of SNR point p are drawn in fixed-size batches; batch b uses the
generator default_rng(SeedSequence([seed, p, b])), so the result does not depend
on how many workers run the batches.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from blbc_polar.channel import awgn_llr
from blbc_polar.decoder import Decoder
from blbc_polar.formats import read_transformation
from blbc_polar.log import StructuredLogger, transaction
from blbc_polar.models import (
    DEFAULT_BATCH_SIZE,
    DEFAULT_MAX_FRAMES,
    DEFAULT_TARGET_FRAME_ERRORS,
    DecoderKind,
    KernelMode,
    SimConfig,
    SimPoint,
    SimResult,
)
from blbc_polar.resources import load_code
from blbc_polar.transform import Transformation


def _run_batch(
    t: Transformation,
    kind: DecoderKind,
    list_size: int,
    kernel: KernelMode,
    ebno_db: float,
    seed: int,
    point: int,
    batch: int,
    frames: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Per-frame (frame error, bit errors) for one batch."""
    rng = np.random.default_rng(np.random.SeedSequence([seed, point, batch]))
    g = t.g.to_array().astype(np.int64)
    messages = rng.integers(0, 2, size=(frames, t.k), dtype=np.uint8)
    codewords = (messages.astype(np.int64) @ g) & 1
    llrs = awgn_llr(codewords, ebno_db, t.rate, rng)
    decoded = Decoder(kind, t, list_size, kernel).decode_messages(llrs)
    bit_errors = (decoded != messages).sum(axis=1)
    return bit_errors > 0, bit_errors


class FerSimulator:
    """Runs the stop rule (target frame errors or max frames) at each SNR point."""

    def __init__(
        self,
        logger: logging.Logger,
        transformation: Transformation,
        kind: DecoderKind = DecoderKind.SC,
        list_size: int = 1,
        kernel: KernelMode = KernelMode.EXACT,
        max_frames: int = DEFAULT_MAX_FRAMES,
        target_frame_errors: int = DEFAULT_TARGET_FRAME_ERRORS,
        batch_size: int = DEFAULT_BATCH_SIZE,
        seed: int = 0,
        workers: int = 1,
    ) -> None:
        self._log = StructuredLogger(logger)
        self.transformation = transformation
        self.kind = kind
        self.list_size = list_size if kind is DecoderKind.SCL else 1
        self.kernel = kernel
        self.max_frames = max_frames
        self.target_frame_errors = target_frame_errors
        self.batch_size = batch_size
        self.seed = seed
        self.workers = workers
        self.candidates = Decoder(kind, transformation, list_size, kernel).candidates

    def _batch_args(self, ebno_db: float, point: int, batch: int) -> tuple:
        frames = min(self.batch_size, self.max_frames - batch * self.batch_size)
        return (
            self.transformation,
            self.kind,
            self.list_size,
            self.kernel,
            ebno_db,
            self.seed,
            point,
            batch,
            frames,
        )

    def run_point(
        self, ebno_db: float, point: int, pool: Optional[ProcessPoolExecutor] = None
    ) -> SimPoint:
        with transaction(f"ebno-{ebno_db:g}"):
            return self._run_point(ebno_db, point, pool)

    def _run_point(
        self, ebno_db: float, point: int, pool: Optional[ProcessPoolExecutor]
    ) -> SimPoint:
        self._log.info(
            "SIM_POINT_START",
            ebno_db=ebno_db,
            decoder=self.kind.value,
            list_size=self.list_size,
        )
        started = time.perf_counter()
        n_batches = -(-self.max_frames // self.batch_size)
        frames = frame_errors = bit_errors = 0
        batch = 0
        done = False
        while batch < n_batches and not done:
            wave = range(batch, min(batch + max(1, self.workers), n_batches))
            args = [self._batch_args(ebno_db, point, b) for b in wave]
            if pool is None:
                outcomes = [_run_batch(*a) for a in args]
            else:
                outcomes = list(pool.map(_run_batch, *zip(*args)))
            for frame_err, bit_err in outcomes:
                hits = np.cumsum(frame_err)
                reached = np.flatnonzero(hits >= self.target_frame_errors - frame_errors)
                take = int(reached[0]) + 1 if reached.size else len(frame_err)
                frames += take
                frame_errors += int(frame_err[:take].sum())
                bit_errors += int(bit_err[:take].sum())
                if frame_errors >= self.target_frame_errors:
                    done = True
                    break
            batch = wave.stop

        k = self.transformation.k
        result = SimPoint(
            ebno_db=ebno_db,
            decoder=self.kind,
            list_size=self.list_size,
            frames=frames,
            frame_errors=frame_errors,
            bit_errors=bit_errors,
            fer=frame_errors / frames,
            ber=bit_errors / (frames * k) if k else 0.0,
            candidates=self.candidates,
            wall_seconds=time.perf_counter() - started,
            seed=self.seed,
        )
        self._log.info(
            "SIM_POINT_END",
            frames=frames,
            frame_errors=frame_errors,
            fer=f"{result.fer:.3e}",
            seconds=f"{result.wall_seconds:.2f}",
        )
        return result

    def run(self, ebno_grid: Sequence[float]) -> SimResult:
        if self.workers <= 1:
            return SimResult(
                points=[self.run_point(e, p) for p, e in enumerate(ebno_grid)]
            )
        with ProcessPoolExecutor(max_workers=self.workers) as pool:
            return SimResult(
                points=[self.run_point(e, p, pool) for p, e in enumerate(ebno_grid)]
            )


def simulate_fer(cfg: SimConfig, logger: Optional[logging.Logger] = None) -> SimResult:
    """Load the code and transformation named in cfg and run every SNR point.

    Raises:
        ConfigMismatch: the transformation does not fit the code.
        ParseError: a file is malformed.
    """
    g = load_code(cfg.code)
    t = read_transformation(Path(cfg.transformation), g)
    simulator = FerSimulator(
        logger or logging.getLogger(__name__),
        t,
        kind=cfg.decoder,
        list_size=cfg.list_size,
        kernel=cfg.kernel,
        max_frames=cfg.max_frames,
        target_frame_errors=cfg.target_frame_errors,
        batch_size=cfg.batch_size,
        seed=cfg.seed,
        workers=cfg.workers,
    )
    return simulator.run(cfg.ebno_db)
