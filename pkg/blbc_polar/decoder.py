"""SC / SCL decoding over the pruned graph with dynamic frozen bits, and codebook MLD.

LLRs are log P(y|0)/P(y|1). The decoders walk the graph from the channel side:
a block of 2h wires at stage s splits into its two halves, where a kept
butterfly applies f / g and a pruned one passes the LLRs straight through.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from blbc_polar.errors import DimensionTooLarge, LengthMismatch, ParamOutOfRange
from blbc_polar.gf2 import BitMatrix, parity
from blbc_polar.models import (
    LLR_SHORTENED,
    MLD_MAX_K,
    DecoderKind,
    KernelMode,
)
from blbc_polar.transform import Transformation

# 1-D or 2-D array of LLRs
LlrVector = np.ndarray


@dataclass(frozen=True, eq=False)
class DecodeResult:
    message: np.ndarray
    codeword: np.ndarray
    path_metric: float
    list_rank: int = 0
    u: Optional[np.ndarray] = field(default=None, repr=False)


def f_exact(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Box-plus in the numerically stable min-plus-correction form."""
    return (
        np.sign(a) * np.sign(b) * np.minimum(np.abs(a), np.abs(b))
        + np.log1p(np.exp(-np.abs(a + b)))
        - np.log1p(np.exp(-np.abs(a - b)))
    )


def f_min_sum(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.sign(a) * np.sign(b) * np.minimum(np.abs(a), np.abs(b))


_KERNELS: dict[KernelMode, Callable[[np.ndarray, np.ndarray], np.ndarray]] = {
    KernelMode.EXACT: f_exact,
    KernelMode.MIN_SUM: f_min_sum,
}


def path_increment(bits: np.ndarray, llr: np.ndarray) -> np.ndarray:
    """ln(1 + exp(-(1 - 2u) * llr))."""
    return np.logaddexp(0.0, -(1.0 - 2.0 * bits) * llr)


def prepare_llr(chan_llr: Sequence[float] | LlrVector, t: Transformation) -> LlrVector:
    """Channel LLRs (length n) -> graph-side LLRs (length N): r = y S^T P^-1.

    Shortened positions carry LLR_SHORTENED (a known zero).
    """
    y = np.asarray(chan_llr, dtype=np.float64)
    if y.shape != (t.n,):
        raise LengthMismatch(f"expected {t.n} channel LLRs, got {y.shape}")
    full = np.full(t.n_big, LLR_SHORTENED, dtype=np.float64)
    full[list(t.shorten.kept)] = y
    return t.perm.apply_inverse(full)


def _check_graph_llr(llr: Sequence[float] | LlrVector, t: Transformation) -> LlrVector:
    arr = np.asarray(llr, dtype=np.float64)
    if arr.shape != (t.n_big,):
        raise LengthMismatch(f"expected {t.n_big} LLRs, got {arr.shape}")
    return arr


def _finish(t: Transformation, u: np.ndarray, metric: float, rank: int) -> DecodeResult:
    message = t.message_from_p(u[list(t.info_set)])
    codeword = (
        t.g.vecmul(message) if t.k else np.zeros(t.n, dtype=np.uint8)
    )
    return DecodeResult(message, codeword, float(metric), rank, u.astype(np.uint8))


class _ScDecoder:
    def __init__(self, t: Transformation, kernel: KernelMode) -> None:
        self._t = t
        self._f = _KERNELS[kernel]
        self._kept = t.pruning.array
        self._u = np.zeros(t.n_big, dtype=np.uint8)
        self._u_word = 0
        self._metric = 0.0

    def run(self, llr: LlrVector) -> DecodeResult:
        self._node(llr, self._t.pruning.m, 0)
        return _finish(self._t, self._u, self._metric, 0)

    def _node(self, llr: np.ndarray, stage: int, offset: int) -> np.ndarray:
        if stage == 0:
            return self._leaf(float(llr[0]), offset)
        h = 1 << (stage - 1)
        la, lb = llr[:h], llr[h:]
        kept = self._kept[offset // 2 : offset // 2 + h, stage - 1]
        left = self._node(np.where(kept, self._f(la, lb), la), stage - 1, offset)
        right = self._node(
            np.where(kept, lb + (1.0 - 2.0 * left) * la, lb), stage - 1, offset + h
        )
        return np.concatenate([np.where(kept, left ^ right, left), right])

    def _leaf(self, lam: float, i: int) -> np.ndarray:
        frozen = self._t.frozen
        if frozen.is_info(i):
            bit = 1 if lam < 0 else 0
        else:
            bit = parity(self._u_word & frozen.refs[i])
        self._metric += float(np.logaddexp(0.0, -(1 - 2 * bit) * lam))
        self._u[i] = bit
        self._u_word |= bit << i
        return np.array([bit], dtype=np.uint8)


class _ListDecoder:
    """Breadth-first SCL: all paths descend the graph together as rows of one array.

    Every recursive call returns the bits of its block for the surviving paths
    plus, per survivor, the index of the input path it descends from.
    """

    def __init__(self, t: Transformation, list_size: int, kernel: KernelMode) -> None:
        if list_size < 1:
            raise ParamOutOfRange(f"list size must be >= 1, got {list_size}")
        self._t = t
        self._list_size = list_size
        self._f = _KERNELS[kernel]
        self._kept = t.pruning.array
        self._u = np.zeros((1, t.n_big), dtype=np.uint8)
        self._metric = np.zeros(1, dtype=np.float64)

    def run(self, llr: LlrVector) -> list[DecodeResult]:
        self._node(llr[None, :], self._t.pruning.m, 0)
        keys = [self._u[:, j] for j in range(self._t.n_big - 1, -1, -1)]
        order = np.lexsort((*keys, self._metric))
        return [
            _finish(self._t, self._u[p], self._metric[p], rank)
            for rank, p in enumerate(order)
        ]

    def _node(
        self, llr: np.ndarray, stage: int, offset: int
    ) -> tuple[np.ndarray, np.ndarray]:
        if stage == 0:
            return self._leaf(llr[:, 0], offset)
        h = 1 << (stage - 1)
        la, lb = llr[:, :h], llr[:, h:]
        kept = self._kept[offset // 2 : offset // 2 + h, stage - 1]
        left, origin_left = self._node(
            np.where(kept, self._f(la, lb), la), stage - 1, offset
        )
        la, lb = la[origin_left], lb[origin_left]
        right, origin_right = self._node(
            np.where(kept, lb + (1.0 - 2.0 * left) * la, lb), stage - 1, offset + h
        )
        left = left[origin_right]
        bits = np.concatenate([np.where(kept, left ^ right, left), right], axis=1)
        return bits, origin_left[origin_right]

    def _leaf(self, lam: np.ndarray, i: int) -> tuple[np.ndarray, np.ndarray]:
        n_paths = lam.shape[0]
        frozen = self._t.frozen
        if not frozen.is_info(i):
            refs = list(frozen.ref_positions[i])
            if refs:
                bit = (self._u[:, refs].sum(axis=1) & 1).astype(np.uint8)
            else:
                bit = np.zeros(n_paths, dtype=np.uint8)
            self._metric = self._metric + path_increment(bit, lam)
            self._u[:, i] = bit
            return bit[:, None], np.arange(n_paths)

        # candidate 2p + b extends path p with bit b
        origin = np.repeat(np.arange(n_paths), 2)
        bits = np.tile(np.array([0, 1], dtype=np.uint8), n_paths)
        metric = self._metric[origin] + path_increment(bits, lam[origin])
        u = self._u[origin]
        u[:, i] = bits
        keys = [u[:, j] for j in range(i, -1, -1)]
        order = np.lexsort((*keys, metric))[: self._list_size]
        self._u = u[order]
        self._metric = metric[order]
        return bits[order][:, None], origin[order]


def sc_decode(
    llr: Sequence[float] | LlrVector,
    t: Transformation,
    kernel: KernelMode = KernelMode.EXACT,
) -> DecodeResult:
    """Successive cancellation on graph-side LLRs (see prepare_llr)."""
    return _ScDecoder(t, kernel).run(_check_graph_llr(llr, t))


def scl_decode(
    llr: Sequence[float] | LlrVector,
    t: Transformation,
    list_size: int,
    kernel: KernelMode = KernelMode.EXACT,
    return_list: bool = False,
) -> DecodeResult | list[DecodeResult]:
    """SC list decoding; ties between equal metrics go to the lexicographically smaller u.

    With return_list, every surviving path is returned ordered by metric.
    """
    paths = _ListDecoder(t, list_size, kernel).run(_check_graph_llr(llr, t))
    return paths if return_list else paths[0]


class MldDecoder:
    """Maximum-likelihood decoding by scanning the codebook of G.

    Messages are enumerated in lexicographic order with m_1 as the most
    significant bit; ties keep the first (smallest) message.
    """

    CHUNK = 1 << 14
    CACHE_LIMIT = 1 << 24
    # max entries of one frames x codewords score matrix
    SCORE_LIMIT = 1 << 22

    def __init__(self, g: BitMatrix) -> None:
        if g.n_rows > MLD_MAX_K:
            raise DimensionTooLarge(f"k={g.n_rows} exceeds the MLD limit {MLD_MAX_K}")
        self._g = g
        self._g_arr = g.to_array().astype(np.int64)
        self._shifts = np.arange(g.n_rows - 1, -1, -1, dtype=np.int64)
        self._signs: Optional[np.ndarray] = None
        if (1 << g.n_rows) * g.n_cols <= self.CACHE_LIMIT:
            _, code = self.codebook(0, 1 << g.n_rows)
            self._signs = 1.0 - 2.0 * code

    @property
    def size(self) -> int:
        return 1 << self._g.n_rows

    def messages(self, start: int, stop: int) -> np.ndarray:
        idx = np.arange(start, stop, dtype=np.int64)
        return ((idx[:, None] >> self._shifts) & 1).astype(np.uint8)

    def codebook(self, start: int, stop: int) -> tuple[np.ndarray, np.ndarray]:
        msgs = self.messages(start, stop)
        code = (msgs.astype(np.int64) @ self._g_arr) & 1
        return msgs, code.astype(np.uint8)

    def best_indices(self, llrs: np.ndarray) -> np.ndarray:
        """Codebook index maximising the correlation sum (1 - 2c) * llr, per row of llrs."""
        width = self.size if self._signs is not None else min(self.CHUNK, self.size)
        rows = max(1, self.SCORE_LIMIT // width)
        return np.concatenate(
            [self._best_block(llrs[s : s + rows]) for s in range(0, llrs.shape[0], rows)]
            or [np.zeros(0, dtype=np.int64)]
        )

    def _best_block(self, llrs: np.ndarray) -> np.ndarray:
        if self._signs is not None:
            return np.argmax(llrs @ self._signs.T, axis=1)
        best = np.full(llrs.shape[0], -np.inf)
        best_idx = np.zeros(llrs.shape[0], dtype=np.int64)
        for start in range(0, self.size, self.CHUNK):
            stop = min(start + self.CHUNK, self.size)
            _, code = self.codebook(start, stop)
            scores = llrs @ (1.0 - 2.0 * code).T
            local = np.argmax(scores, axis=1)
            value = scores[np.arange(llrs.shape[0]), local]
            better = value > best
            best[better] = value[better]
            best_idx[better] = start + local[better]
        return best_idx

    def decode_batch(self, llrs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """(messages, codewords) for a batch of channel LLR rows."""
        llrs = np.atleast_2d(np.asarray(llrs, dtype=np.float64))
        if llrs.shape[1] != self._g.n_cols:
            raise LengthMismatch(
                f"expected {self._g.n_cols} LLRs per frame, got {llrs.shape[1]}"
            )
        idx = self.best_indices(llrs)
        msgs = ((idx[:, None] >> self._shifts) & 1).astype(np.uint8)
        code = ((msgs.astype(np.int64) @ self._g_arr) & 1).astype(np.uint8)
        return msgs, code

    def decode(self, chan_llr: Sequence[float] | LlrVector) -> DecodeResult:
        llr = np.asarray(chan_llr, dtype=np.float64)
        msgs, code = self.decode_batch(llr[None, :])
        metric = float(path_increment(code[0], llr).sum())
        return DecodeResult(msgs[0], code[0], metric, 0)


def mld(chan_llr: Sequence[float] | LlrVector, g: BitMatrix) -> DecodeResult:
    """Exhaustive ML decision over the original code (k <= 24)."""
    return MldDecoder(g).decode(chan_llr)


def correlation(codeword: np.ndarray, chan_llr: np.ndarray) -> float:
    """ML objective: sum of (1 - 2c_i) * llr_i; larger is more likely."""
    return float(((1.0 - 2.0 * np.asarray(codeword)) * chan_llr).sum())


class Decoder:
    """One decoder configuration applied to channel LLRs (length n).

    Instances keep per-call scratch state; use one per worker.
    """

    def __init__(
        self,
        kind: DecoderKind,
        transformation: Transformation,
        list_size: int = 1,
        kernel: KernelMode = KernelMode.EXACT,
    ) -> None:
        self.kind = kind
        self.transformation = transformation
        self.list_size = list_size if kind is DecoderKind.SCL else 1
        self.kernel = kernel
        self._mld = MldDecoder(transformation.g) if kind is DecoderKind.MLD else None

    @property
    def candidates(self) -> int:
        """Candidate sequences per frame: 1 for SC, L for SCL, 2^k for MLD."""
        if self.kind is DecoderKind.MLD:
            return 1 << self.transformation.k
        return self.list_size

    def decode(self, chan_llr: Sequence[float] | LlrVector) -> DecodeResult:
        if self._mld is not None:
            return self._mld.decode(chan_llr)
        llr = prepare_llr(chan_llr, self.transformation)
        if self.kind is DecoderKind.SC:
            return sc_decode(llr, self.transformation, self.kernel)
        result = scl_decode(llr, self.transformation, self.list_size, self.kernel)
        assert isinstance(result, DecodeResult)
        return result

    def decode_messages(self, chan_llrs: np.ndarray) -> np.ndarray:
        """Decoded messages for a batch of frames, shape (frames, k)."""
        if self._mld is not None:
            return self._mld.decode_batch(chan_llrs)[0]
        out = np.zeros((chan_llrs.shape[0], self.transformation.k), dtype=np.uint8)
        for row, llr in enumerate(chan_llrs):
            out[row] = self.decode(llr).message
        return out
