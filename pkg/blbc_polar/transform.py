"""Turn an (n, k) generator matrix into a pruned, shortened polar-like code.

Given G, N = 2**m, a permutation P, a pruning matrix R and a shortening set,
the dynamic-frozen matrix is

    E x (G S^T P^-1 G~^-1) = M_DF   (M_DF in reduced row echelon form)

and every codeword of G is recovered as c = (m E^-1) M_DF G~ P S.
Positions are 0-indexed throughout; 1-indexing happens in formats.py.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from blbc_polar.errors import (
    DimensionMismatch,
    LengthMismatch,
    NotEchelon,
    ShortenViolation,
)
from blbc_polar.gf2 import (
    BitMatrix,
    Permutation,
    combine_rows,
    invert,
    pack_bits,
    parity,
    rref,
    unpack_bits,
)
from blbc_polar.models import RoundtripFailure, RoundtripReport
from blbc_polar.polarlike import (
    PrunedPolarCode,
    PruningMatrix,
    encode_word,
    inverse_word,
    stages_for,
)


@dataclass(frozen=True)
class ShortenSpec:
    """Transmitted (kept) and shortened (dropped) positions of the permuted word."""

    n_big: int
    kept: tuple[int, ...]
    dropped: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.kept + self.dropped) != list(range(self.n_big)):
            raise DimensionMismatch(
                f"kept/dropped must partition 0..{self.n_big - 1}"
            )
        if list(self.kept) != sorted(self.kept) or list(self.dropped) != sorted(
            self.dropped
        ):
            raise DimensionMismatch("kept and dropped must be sorted")

    @classmethod
    def last(cls, n_big: int, n: int) -> ShortenSpec:
        """Default convention: the last N - n positions are shortened."""
        if not 1 <= n <= n_big:
            raise DimensionMismatch(f"code length {n} does not fit N={n_big}")
        return cls(n_big, tuple(range(n)), tuple(range(n, n_big)))

    @classmethod
    def from_dropped(cls, n_big: int, dropped: Sequence[int]) -> ShortenSpec:
        drop = sorted(set(int(d) for d in dropped))
        if len(drop) != len(dropped) or any(not 0 <= d < n_big for d in drop):
            raise DimensionMismatch(f"invalid dropped set {list(dropped)} for N={n_big}")
        keep = [i for i in range(n_big) if i not in set(drop)]
        return cls(n_big, tuple(keep), tuple(drop))

    @property
    def n(self) -> int:
        return len(self.kept)

    @cached_property
    def dropped_mask(self) -> int:
        return sum(1 << d for d in self.dropped)

    def scatter_word(self, word: int) -> int:
        """S^T: bit j of a length-n word lands at position kept[j]; dropped get 0."""
        out = 0
        for j, pos in enumerate(self.kept):
            if (word >> j) & 1:
                out |= 1 << pos
        return out

    def gather_word(self, word: int) -> int:
        """S: keep the transmitted positions, in order."""
        out = 0
        for j, pos in enumerate(self.kept):
            if (word >> pos) & 1:
                out |= 1 << j
        return out


@dataclass(frozen=True)
class FrozenSpec:
    """Per u-position role: information bit t, or frozen to an XOR of earlier pivots.

    info_row[i] is the message row for an information position and -1 otherwise;
    refs[i] is the packed set of pivot positions whose decoded values XOR to u_i
    (0 for information positions and for static zeros).
    """

    info_row: tuple[int, ...]
    refs: tuple[int, ...]

    @property
    def n_big(self) -> int:
        return len(self.info_row)

    @cached_property
    def info_set(self) -> tuple[int, ...]:
        return tuple(i for i, t in enumerate(self.info_row) if t >= 0)

    @cached_property
    def ref_positions(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(j for j in range(i) if (r >> j) & 1) for i, r in enumerate(self.refs)
        )

    def is_info(self, i: int) -> bool:
        return self.info_row[i] >= 0

    def static_frozen(self) -> tuple[int, ...]:
        return tuple(
            i for i in range(self.n_big) if self.info_row[i] < 0 and self.refs[i] == 0
        )

    def dynamic_frozen(self) -> dict[int, tuple[int, ...]]:
        return {
            i: self.ref_positions[i]
            for i in range(self.n_big)
            if self.info_row[i] < 0 and self.refs[i]
        }

    def expand(self, message_p: Sequence[int] | np.ndarray) -> np.ndarray:
        """Sequentially rebuild u from m_p: pivots take message bits, frozen bits take their XOR."""
        mp = np.asarray(message_p, dtype=np.uint8)
        if mp.shape != (len(self.info_set),):
            raise LengthMismatch(f"expected {len(self.info_set)} bits, got {mp.shape}")
        u_word = 0
        for i in range(self.n_big):
            t = self.info_row[i]
            bit = int(mp[t]) if t >= 0 else parity(u_word & self.refs[i])
            u_word |= bit << i
        return unpack_bits(u_word, self.n_big)


def extract_frozen(m_df: BitMatrix) -> FrozenSpec:
    """Read information and frozen positions off a reduced row echelon M_DF.

    Raises:
        NotEchelon: if m_df is not in reduced row echelon form.
    """
    pivots: list[int] = []
    for r, row in enumerate(m_df.rows):
        if row == 0:
            raise NotEchelon(f"row {r} is zero")
        pivot = (row & -row).bit_length() - 1
        if pivots and pivot <= pivots[-1]:
            raise NotEchelon(f"pivot of row {r} is not right of the previous pivot")
        pivots.append(pivot)
    for r, pivot in enumerate(pivots):
        if any((row >> pivot) & 1 for t, row in enumerate(m_df.rows) if t != r):
            raise NotEchelon(f"pivot column {pivot} is not a unit vector")

    info_row = [-1] * m_df.n_cols
    refs = [0] * m_df.n_cols
    for t, pivot in enumerate(pivots):
        info_row[pivot] = t
    cols = m_df.column_words() if m_df.n_rows else [0] * m_df.n_cols
    for c in range(m_df.n_cols):
        if info_row[c] >= 0:
            continue
        for t in range(m_df.n_rows):
            if (cols[c] >> t) & 1:
                refs[c] |= 1 << pivots[t]
    return FrozenSpec(tuple(info_row), tuple(refs))


@dataclass(frozen=True)
class Transformation:
    """A realised transformation: (G, N, P, R, S) plus the derived M_DF, E and frozen map."""

    g: BitMatrix
    n_big: int
    perm: Permutation
    pruning: PruningMatrix
    shorten: ShortenSpec
    m_df: BitMatrix
    elim: BitMatrix
    frozen: FrozenSpec

    @property
    def k(self) -> int:
        return self.g.n_rows

    @property
    def n(self) -> int:
        return self.g.n_cols

    @property
    def rate(self) -> float:
        return self.k / self.n

    @property
    def info_set(self) -> tuple[int, ...]:
        return self.frozen.info_set

    @property
    def graph(self) -> PrunedPolarCode:
        return PrunedPolarCode(self.pruning)

    @property
    def generator_tilde(self) -> BitMatrix:
        return self.graph.gen

    @cached_property
    def elim_inv(self) -> BitMatrix:
        if self.k == 0:
            return self.elim
        return invert(self.elim)

    def message_word_p(self, message_word: int) -> int:
        """Packed m_p = m E^-1."""
        return combine_rows(self.elim_inv.rows, message_word) if self.k else 0

    def message_from_p(self, message_p: Sequence[int] | np.ndarray) -> np.ndarray:
        """m = m_p E."""
        if self.k == 0:
            return np.zeros(0, dtype=np.uint8)
        return self.elim.vecmul(message_p)

    def u_from_message(self, message: Sequence[int] | np.ndarray) -> np.ndarray:
        """u = (m E^-1) M_DF, the input of the pruned graph."""
        m_word = _message_word(message, self.k)
        u_word = combine_rows(self.m_df.rows, self.message_word_p(m_word))
        return unpack_bits(u_word, self.n_big)

    def transmitted_word(self, u_word: int) -> int:
        """c_p P for a packed u (full length N, before shortening)."""
        return self.perm.apply_word(encode_word(u_word, self.pruning))


def _message_word(message: Sequence[int] | np.ndarray, k: int) -> int:
    m = np.asarray(message, dtype=np.uint8)
    if m.shape != (k,):
        raise LengthMismatch(f"expected message of length {k}, got {m.shape}")
    return pack_bits(m)


def build_transformation(
    g: BitMatrix,
    n_big: int,
    perm: Permutation,
    pruning: PruningMatrix,
    shorten: Optional[ShortenSpec] = None,
) -> Transformation:
    """Construct M_DF, E and the frozen map for (G, N, P, R, S).

    Raises:
        RankDeficient: G is not full row rank.
        DimensionMismatch: sizes of G, P, R and S disagree.
        ShortenViolation: a basis row is nonzero on a dropped position.
    """
    stages_for(n_big)
    if shorten is None:
        shorten = ShortenSpec.last(n_big, g.n_cols)
    if perm.n != n_big or pruning.n_big != n_big or shorten.n_big != n_big:
        raise DimensionMismatch(
            f"N={n_big} but perm={perm.n}, R={pruning.n_big}, S={shorten.n_big}"
        )
    if shorten.n != g.n_cols:
        raise DimensionMismatch(
            f"shortening keeps {shorten.n} positions, code length is {g.n_cols}"
        )

    rows = tuple(
        inverse_word(perm.apply_inverse_word(shorten.scatter_word(r)), pruning)
        for r in g.rows
    )
    reduced = rref(BitMatrix(g.n_rows, n_big, rows))
    transformation = Transformation(
        g=g,
        n_big=n_big,
        perm=perm,
        pruning=pruning,
        shorten=shorten,
        m_df=reduced.reduced,
        elim=reduced.elimination,
        frozen=extract_frozen(reduced.reduced),
    )

    for t, row in enumerate(reduced.reduced.rows):
        if transformation.transmitted_word(row) & shorten.dropped_mask:
            raise ShortenViolation(f"basis row {t} is nonzero on a dropped position")
    return transformation


def encode_via_transform(
    message: Sequence[int] | np.ndarray, t: Transformation
) -> np.ndarray:
    """c = (m E^-1) M_DF G~ P S; equals m x G."""
    m_word = _message_word(message, t.k)
    u_word = combine_rows(t.m_df.rows, t.message_word_p(m_word))
    return unpack_bits(t.shorten.gather_word(t.transmitted_word(u_word)), t.n)


def verify_roundtrip(
    t: Transformation, trials: int, seed: int = 0
) -> RoundtripReport:
    """Encode random messages both ways and report the first disagreement."""
    rng = np.random.default_rng(seed)
    failures = 0
    first: Optional[RoundtripFailure] = None
    for trial in range(trials):
        m = rng.integers(0, 2, size=t.k, dtype=np.uint8)
        m_word = pack_bits(m)
        expected = combine_rows(t.g.rows, m_word)
        full = t.transmitted_word(combine_rows(t.m_df.rows, t.message_word_p(m_word)))
        got = t.shorten.gather_word(full)

        if got != expected:
            kind, want, have = "codeword", expected, got
        elif full & t.shorten.dropped_mask:
            kind, want, have = "shortened", full & ~t.shorten.dropped_mask, full
        else:
            continue
        failures += 1
        if first is None:
            width = t.n if kind == "codeword" else t.n_big
            first = RoundtripFailure(
                trial=trial,
                kind=kind,
                message=m.tolist(),
                expected=unpack_bits(want, width).tolist(),
                got=unpack_bits(have, width).tolist(),
            )
    return RoundtripReport(trials=trials, failures=failures, first_failure=first)


def align_shortening(source: ShortenSpec, target: ShortenSpec) -> Permutation:
    """Permutation q with build(perm.then(q), target) == build(perm, source).

    q carries the j-th kept (dropped) position of source onto the j-th kept
    (dropped) position of target, so G S_source^T Q = G S_target^T.
    """
    if source.n_big != target.n_big or source.n != target.n:
        raise DimensionMismatch("shortening specs differ in N or n")
    q = [0] * source.n_big
    for a, b in zip(source.kept, target.kept):
        q[a] = b
    for a, b in zip(source.dropped, target.dropped):
        q[a] = b
    return Permutation(tuple(q))
