"""Search over (R, P): simulated annealing and exhaustive enumeration."""

from __future__ import annotations

import itertools
import logging
import math
import time
from collections import OrderedDict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from blbc_polar.errors import ConfigMismatch, RankDeficient, SpaceTooLarge
from blbc_polar.gf2 import BitMatrix, Permutation, rank
from blbc_polar.log import StructuredLogger, transaction
from blbc_polar.models import (
    EXHAUSTIVE_GUARD,
    AnnealConfig,
    ExhaustiveScope,
    MovePolicy,
)
from blbc_polar.polarlike import PruningMatrix, stages_for
from blbc_polar.reliability import ChannelParam, channel_z, propagate_z
from blbc_polar.transform import ShortenSpec, Transformation, build_transformation


class CostEvaluator:
    """Column-packed cost of a candidate (R, P) for a fixed code and channel.

    Works on the N columns of G S^T as k-bit ints: P^-1 reindexes them, the
    inverse graph XORs them pairwise, and the information set is the set of
    columns that raise the rank, scanning left to right. Z vectors are cached
    per (R, shortened preimages).
    """

    def __init__(
        self,
        g: BitMatrix,
        n_big: int,
        chan: ChannelParam,
        shorten: Optional[ShortenSpec] = None,
        cache_size: int = 4096,
    ) -> None:
        stages_for(n_big)
        self.g = g
        self.n_big = n_big
        self.chan = chan
        self.shorten = shorten or ShortenSpec.last(n_big, g.n_cols)
        r = rank(g)
        if r < g.n_rows:
            raise RankDeficient(r, g.n_rows)
        self._cols = [0] * n_big
        for j, word in enumerate(g.column_words()):
            self._cols[self.shorten.kept[j]] = word
        self._z0 = channel_z(chan)
        self._dropped = frozenset(self.shorten.dropped)
        self._cache: OrderedDict[tuple[PruningMatrix, tuple[int, ...]], np.ndarray] = (
            OrderedDict()
        )
        self._cache_size = cache_size

    def pivots(self, pruning: PruningMatrix, p: Sequence[int]) -> list[int]:
        cols = [self._cols[v] for v in p]
        for pairs in reversed(pruning.kept_pairs):
            for a, b in pairs:
                cols[a] ^= cols[b]
        basis: dict[int, int] = {}
        pivots: list[int] = []
        for c, word in enumerate(cols):
            while word:
                top = word.bit_length() - 1
                if top in basis:
                    word ^= basis[top]
                else:
                    basis[top] = word
                    pivots.append(c)
                    break
        if len(pivots) != self.g.n_rows:
            raise RankDeficient(len(pivots), self.g.n_rows)
        return pivots

    def z(self, pruning: PruningMatrix, p: Sequence[int]) -> np.ndarray:
        shortened = tuple(i for i, v in enumerate(p) if v in self._dropped)
        key = (pruning, shortened)
        cached = self._cache.get(key)
        if cached is not None:
            self._cache.move_to_end(key)
            return cached
        zin = np.full(self.n_big, self._z0, dtype=np.float64)
        zin[list(shortened)] = 0.0
        z = propagate_z(zin, pruning)
        self._cache[key] = z
        if len(self._cache) > self._cache_size:
            self._cache.popitem(last=False)
        return z

    def evaluate_raw(self, pruning: PruningMatrix, p: Sequence[int]) -> float:
        """Cost for a 0-indexed one-line permutation tuple."""
        return float(self.z(pruning, p)[self.pivots(pruning, p)].sum())

    def evaluate(self, pruning: PruningMatrix, perm: Permutation) -> float:
        return self.evaluate_raw(pruning, perm.p)

    def build(self, pruning: PruningMatrix, perm: Permutation) -> Transformation:
        return build_transformation(self.g, self.n_big, perm, pruning, self.shorten)


@dataclass(frozen=True)
class SearchState:
    pruning: PruningMatrix
    perm: Permutation
    current_cost: float
    best_pruning: PruningMatrix
    best_perm: Permutation
    best_cost: float

    @classmethod
    def start(cls, pruning: PruningMatrix, perm: Permutation, cost: float) -> SearchState:
        return cls(pruning, perm, cost, pruning, perm, cost)


def pick_move(
    rng: np.random.Generator,
    policy: MovePolicy,
    iteration: int,
    search_perm: bool = True,
    search_pruning: bool = True,
) -> bool:
    """True for a pruning flip, False for a permutation swap."""
    if not search_perm:
        return True
    if not search_pruning:
        return False
    if policy is MovePolicy.ALTERNATE:
        return iteration % 2 == 1
    return bool(rng.integers(2) == 0)


def neighbor(
    state: SearchState,
    rng: np.random.Generator,
    policy: MovePolicy = MovePolicy.ALTERNATE,
    iteration: int = 1,
    search_perm: bool = True,
    search_pruning: bool = True,
) -> tuple[PruningMatrix, Permutation]:
    """Flip one pruning flag or swap two permutation entries; the other part is unchanged."""
    if pick_move(rng, policy, iteration, search_perm, search_pruning):
        flag = int(rng.integers(state.pruning.size))
        m = state.pruning.m
        return state.pruning.flipped(flag // m, flag % m), state.perm
    i, j = rng.choice(state.perm.n, size=2, replace=False)
    return state.pruning, state.perm.swapped(int(i), int(j))


@dataclass(frozen=True, eq=False)
class CostTrace:
    """Per-iteration record; row t-1 describes iteration t."""

    temperature: np.ndarray
    current_cost: np.ndarray
    best_cost: np.ndarray

    @property
    def iterations(self) -> np.ndarray:
        return np.arange(1, len(self.temperature) + 1)

    def __len__(self) -> int:
        return len(self.temperature)


@dataclass(frozen=True, eq=False)
class AnnealResult:
    transformation: Transformation
    best_cost: float
    trace: CostTrace
    iterations_to_best: int
    accepted: int
    seed: int

    @property
    def visited(self) -> int:
        """Candidates evaluated, the initial state included."""
        return len(self.trace) + 1


class Annealer:
    """One simulated-annealing chain over (R, P).

    Starts from R = all ones and P = identity unless told otherwise, keeps the
    best state seen and returns it as a built Transformation.
    """

    def __init__(
        self,
        logger: logging.Logger,
        g: BitMatrix,
        n_big: int,
        chan: ChannelParam,
        cfg: AnnealConfig,
        shorten: Optional[ShortenSpec] = None,
    ) -> None:
        self._log = StructuredLogger(logger)
        self.cfg = cfg
        self.evaluator = CostEvaluator(g, n_big, chan, shorten)

    def run(
        self,
        initial_perm: Optional[Permutation] = None,
        initial_pruning: Optional[PruningMatrix] = None,
    ) -> AnnealResult:
        with transaction(f"chain-{self.cfg.seed}"):
            return self._run(initial_perm, initial_pruning)

    def _run(
        self,
        initial_perm: Optional[Permutation],
        initial_pruning: Optional[PruningMatrix],
    ) -> AnnealResult:
        cfg = self.cfg
        n_big = self.evaluator.n_big
        if initial_perm is not None and initial_perm.n != n_big:
            raise ConfigMismatch(f"initial permutation has length {initial_perm.n}")
        if initial_pruning is not None and initial_pruning.n_big != n_big:
            raise ConfigMismatch(f"initial pruning matrix is for N={initial_pruning.n_big}")
        rng = np.random.default_rng(cfg.seed)

        pruning = initial_pruning or PruningMatrix.all_ones(n_big)
        perm = initial_perm or Permutation.identity(n_big)
        current = self.evaluator.evaluate(pruning, perm)
        state = SearchState.start(pruning, perm, current)
        self._log.info(
            "ANNEAL_START",
            seed=cfg.seed,
            t_max=cfg.t_max,
            gamma=cfg.gamma,
            policy=cfg.move_policy.value,
            cost=f"{current:.6f}",
        )

        temps = np.empty(cfg.t_max, dtype=np.float64)
        currents = np.empty(cfg.t_max, dtype=np.float64)
        bests = np.empty(cfg.t_max, dtype=np.float64)
        iterations_to_best = 0
        accepted = 0
        started = time.perf_counter()
        temperature = cfg.t_init

        for t in range(1, cfg.t_max + 1):
            cand_pruning, cand_perm = neighbor(
                state, rng, cfg.move_policy, t, cfg.search_perm, cfg.search_pruning
            )
            cand_cost = self.evaluator.evaluate(cand_pruning, cand_perm)
            delta = cand_cost - state.current_cost
            if delta <= 0:
                accept = True
            elif temperature > 0:
                accept = bool(rng.random() < math.exp(-delta / temperature))
            else:
                accept = False

            if accept:
                accepted += 1
                if cand_cost < state.best_cost:
                    state = SearchState(
                        cand_pruning, cand_perm, cand_cost, cand_pruning, cand_perm, cand_cost
                    )
                    iterations_to_best = t
                else:
                    state = SearchState(
                        cand_pruning,
                        cand_perm,
                        cand_cost,
                        state.best_pruning,
                        state.best_perm,
                        state.best_cost,
                    )

            temps[t - 1] = temperature
            currents[t - 1] = state.current_cost
            bests[t - 1] = state.best_cost
            if t % cfg.report_every == 0:
                self._log.info(
                    "ANNEAL_PROGRESS",
                    iteration=t,
                    temperature=f"{temperature:.3e}",
                    current=f"{state.current_cost:.6f}",
                    best=f"{state.best_cost:.6f}",
                )
            temperature *= cfg.gamma

        self._log.info(
            "ANNEAL_END",
            seed=cfg.seed,
            best=f"{state.best_cost:.6f}",
            iterations_to_best=iterations_to_best,
            accepted=accepted,
            seconds=f"{time.perf_counter() - started:.2f}",
        )
        return AnnealResult(
            transformation=self.evaluator.build(state.best_pruning, state.best_perm),
            best_cost=state.best_cost,
            trace=CostTrace(temps, currents, bests),
            iterations_to_best=iterations_to_best,
            accepted=accepted,
            seed=cfg.seed,
        )


def anneal(
    g: BitMatrix,
    n_big: int,
    chan: ChannelParam,
    cfg: AnnealConfig,
    logger: Optional[logging.Logger] = None,
    shorten: Optional[ShortenSpec] = None,
    initial_perm: Optional[Permutation] = None,
    initial_pruning: Optional[PruningMatrix] = None,
) -> AnnealResult:
    annealer = Annealer(
        logger or logging.getLogger(__name__), g, n_big, chan, cfg, shorten
    )
    return annealer.run(initial_perm, initial_pruning)


def _run_chain(
    logger: logging.Logger,
    g: BitMatrix,
    n_big: int,
    chan: ChannelParam,
    cfg: AnnealConfig,
    shorten: Optional[ShortenSpec],
    initial_perm: Optional[Permutation],
    initial_pruning: Optional[PruningMatrix],
) -> AnnealResult:
    return Annealer(logger, g, n_big, chan, cfg, shorten).run(initial_perm, initial_pruning)


def run_chains(
    logger: logging.Logger,
    g: BitMatrix,
    n_big: int,
    chan: ChannelParam,
    cfg: AnnealConfig,
    seeds: Sequence[int],
    workers: int = 1,
    shorten: Optional[ShortenSpec] = None,
    initial_perm: Optional[Permutation] = None,
    initial_pruning: Optional[PruningMatrix] = None,
) -> tuple[AnnealResult, list[AnnealResult]]:
    """Run one independent chain per seed; return (best, all in seed order).

    Best is the minimum cost, ties going to the lowest seed.
    """
    if not seeds:
        raise ConfigMismatch("at least one seed is required")
    configs = [cfg.model_copy(update={"seed": s}) for s in seeds]
    args = [
        (logger, g, n_big, chan, c, shorten, initial_perm, initial_pruning)
        for c in configs
    ]
    if workers <= 1:
        results = [_run_chain(*a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_chain, *zip(*args)))
    best = min(results, key=lambda r: (r.best_cost, r.seed))
    return best, results


@dataclass(frozen=True)
class ExhaustiveResult:
    transformation: Transformation
    min_cost: float
    candidates: int


@dataclass(frozen=True)
class _Unit:
    """A contiguous slice of the enumeration: R indices [r_start, r_stop) x perms.

    first pins the first permutation entry (None = all permutations).
    """

    r_start: int
    r_stop: int
    first: Optional[int]


def _permutations(n_big: int, first: Optional[int]) -> Iterator[tuple[int, ...]]:
    """Lexicographic permutations of 0..N-1, optionally those starting with `first`."""
    if first is None:
        return itertools.permutations(range(n_big))
    rest = [v for v in range(n_big) if v != first]
    return ((first, *tail) for tail in itertools.permutations(rest))


def _search_unit(
    g: BitMatrix,
    n_big: int,
    chan: ChannelParam,
    shorten: ShortenSpec,
    scope: ExhaustiveScope,
    fixed_perm: Permutation,
    fixed_pruning: PruningMatrix,
    unit: _Unit,
) -> tuple[float, int, tuple[int, ...], int]:
    """Best (cost, R index, perm) in enumeration order within one unit, plus the count."""
    evaluator = CostEvaluator(g, n_big, chan, shorten)
    best = (math.inf, -1, fixed_perm.p)
    count = 0
    for r_index in range(unit.r_start, unit.r_stop):
        pruning = (
            fixed_pruning
            if scope is ExhaustiveScope.PERM_ONLY
            else PruningMatrix.from_index(n_big, r_index)
        )
        perms = (
            [fixed_perm.p]
            if scope is ExhaustiveScope.PRUNING_ONLY
            else _permutations(n_big, unit.first)
        )
        for p in perms:
            value = evaluator.evaluate_raw(pruning, p)
            count += 1
            if value < best[0]:
                best = (value, r_index, tuple(p))
    return best[0], best[1], best[2], count


class ExhaustiveSearcher:
    """Global minimiser of the cost over a scope, in a fixed enumeration order.

    Pruning matrices run in binary counting order (outer loop), permutations in
    lexicographic order (inner loop); only a strictly smaller cost replaces the
    incumbent, so the first minimiser in that order wins.
    """

    def __init__(
        self,
        logger: logging.Logger,
        g: BitMatrix,
        n_big: int,
        chan: ChannelParam,
        scope: ExhaustiveScope = ExhaustiveScope.FULL,
        shorten: Optional[ShortenSpec] = None,
        fixed_perm: Optional[Permutation] = None,
        fixed_pruning: Optional[PruningMatrix] = None,
        workers: int = 1,
    ) -> None:
        self._log = StructuredLogger(logger)
        self.g = g
        self.n_big = n_big
        self.chan = chan
        self.scope = scope
        self.shorten = shorten or ShortenSpec.last(n_big, g.n_cols)
        self.fixed_perm = fixed_perm or Permutation.identity(n_big)
        self.fixed_pruning = fixed_pruning or PruningMatrix.all_ones(n_big)
        self.workers = workers

    @property
    def space_size(self) -> int:
        n_perms = math.factorial(self.n_big)
        n_prunings = 1 << ((self.n_big // 2) * stages_for(self.n_big))
        if self.scope is ExhaustiveScope.PERM_ONLY:
            return n_perms
        if self.scope is ExhaustiveScope.PRUNING_ONLY:
            return n_prunings
        return n_perms * n_prunings

    def _units(self) -> list[_Unit]:
        n_prunings = 1 << ((self.n_big // 2) * stages_for(self.n_big))
        if self.scope is ExhaustiveScope.PERM_ONLY:
            r = self.fixed_pruning.index
            return [_Unit(r, r + 1, first) for first in range(self.n_big)]
        if self.scope is ExhaustiveScope.PRUNING_ONLY:
            step = max(1, n_prunings // 64)
            return [
                _Unit(s, min(s + step, n_prunings), None)
                for s in range(0, n_prunings, step)
            ]
        return [_Unit(r, r + 1, None) for r in range(n_prunings)]

    def run(self) -> ExhaustiveResult:
        """Raises SpaceTooLarge when the scope exceeds the enumeration guard."""
        with transaction(f"exhaustive-{self.scope.value}"):
            return self._run()

    def _run(self) -> ExhaustiveResult:
        size = self.space_size
        if size > EXHAUSTIVE_GUARD:
            raise SpaceTooLarge(
                f"{size} candidates exceed the exhaustive limit {EXHAUSTIVE_GUARD}"
            )
        self._log.info(
            "EXHAUSTIVE_START", scope=self.scope.value, candidates=size, workers=self.workers
        )
        started = time.perf_counter()
        units = self._units()
        problem = (
            self.g,
            self.n_big,
            self.chan,
            self.shorten,
            self.scope,
            self.fixed_perm,
            self.fixed_pruning,
        )

        if self.workers <= 1:
            outcomes = [_search_unit(*problem, unit) for unit in units]
        else:
            columns = [[arg] * len(units) for arg in problem]
            chunksize = max(1, len(units) // (self.workers * 8))
            with ProcessPoolExecutor(max_workers=self.workers) as pool:
                outcomes = list(
                    pool.map(_search_unit, *columns, units, chunksize=chunksize)
                )

        best_cost, best_r, best_p = math.inf, -1, self.fixed_perm.p
        total = 0
        for done, (cost, r_index, p, count) in enumerate(outcomes, start=1):
            total += count
            if cost < best_cost:
                best_cost, best_r, best_p = cost, r_index, p
            if done % max(1, len(outcomes) // 16) == 0:
                self._log.debug(
                    "EXHAUSTIVE_CHUNK", done=done, of=len(outcomes), best=f"{best_cost:.6f}"
                )

        pruning = (
            self.fixed_pruning
            if self.scope is ExhaustiveScope.PERM_ONLY
            else PruningMatrix.from_index(self.n_big, best_r)
        )
        transformation = build_transformation(
            self.g, self.n_big, Permutation(best_p), pruning, self.shorten
        )
        self._log.info(
            "EXHAUSTIVE_END",
            min_cost=f"{best_cost:.6f}",
            candidates=total,
            seconds=f"{time.perf_counter() - started:.2f}",
        )
        return ExhaustiveResult(transformation, best_cost, total)


def exhaustive(
    g: BitMatrix,
    n_big: int,
    chan: ChannelParam,
    scope: ExhaustiveScope = ExhaustiveScope.FULL,
    logger: Optional[logging.Logger] = None,
    workers: int = 1,
) -> tuple[Transformation, float]:
    result = ExhaustiveSearcher(
        logger or logging.getLogger(__name__), g, n_big, chan, scope, workers=workers
    ).run()
    return result.transformation, result.min_cost
