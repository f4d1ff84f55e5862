"""Minimum-weight engines: Gray-code brute force and the Brouwer-Zimmermann family.

Every BZ engine shares one driver loop (``g = 1, 2, ...`` over all Gamma
matrices, upper bound per round, lower bound after the round) and differs only
in how a single round enumerates the ``g``-row combinations of one Gamma.
Counters record row-level XORs, not bit operations.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import parallel
from .enumeration import binomial, index_of
from .f2core import BitMatrix, row_basis, row_weights, word_count
from .gamma import (Bounds, GammaSet, best_gamma_over_permutations, lower_bound,
                    singleton_upper)

log = logging.getLogger(__name__)

ALGORITHMS = ("brute_gray", "basic", "optimized", "stack", "saved", "saved_unrolled")
ALIASES = {"brute": "brute_gray", "gray": "brute_gray", "unrolled": "saved_unrolled"}
DEFAULT_MEMORY_CAP = 2 << 30
DEFAULT_BRUTE_CAP = 40
_BATCH = 8192
_NONE = parallel.NO_WEIGHT


class ZeroCodeError(ValueError):
    pass


class BruteForceCapError(ValueError):
    pass


class MemoryCapError(ValueError):
    def __init__(self, required: int, cap: int):
        super().__init__(f"saved-additions table needs {required} bytes per Gamma, "
                         f"cap is {cap}; lower s or raise the cap")
        self.required = required
        self.cap = cap


@dataclass
class RoundStats:
    """Counters for one ``g`` round (all Gamma matrices processed in it)."""

    g: int
    row_additions: int = 0
    combinations: int = 0
    row_accesses: int = 0
    gammas: int = 0
    messages: list[int] = field(default_factory=list)
    lower: int = 0
    upper: int = 0

    def absorb(self, other: "RoundStats") -> None:
        self.row_additions += other.row_additions
        self.combinations += other.combinations
        self.row_accesses += other.row_accesses
        self.messages.extend(other.messages)


@dataclass
class WorkStats:
    row_additions: int = 0
    combinations: int = 0
    row_accesses: int = 0
    table_additions: int = 0
    messages: int = 0
    g_final: int = 0
    lower: int = 0
    upper: int = 0
    per_g: list[RoundStats] = field(default_factory=list)

    def add_round(self, rs: RoundStats) -> None:
        self.per_g.append(rs)
        self.row_additions += rs.row_additions
        self.combinations += rs.combinations
        self.row_accesses += rs.row_accesses
        self.messages += sum(rs.messages)
        self.g_final = rs.g


@dataclass
class EngineConfig:
    algorithm: str = "saved"
    s: int = 5
    unroll: int = 2
    permutation_trials: int = 10
    seed: int = 0
    workers: int = 1
    brute_cap: int = DEFAULT_BRUTE_CAP
    memory_cap: int = DEFAULT_MEMORY_CAP
    schedule: parallel.ScheduleConfig | None = None

    def __post_init__(self):
        self.algorithm = ALIASES.get(self.algorithm, self.algorithm)
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}; expected one of {ALGORITHMS}")
        if not 1 <= self.s <= 8:
            raise ValueError("s must be in 1..8")
        if self.unroll not in (1, 2, 3):
            raise ValueError("unroll must be 1, 2 or 3")
        if self.permutation_trials < 1:
            raise ValueError("permutation_trials must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


# -- brute force --------------------------------------------------------------

def brute_force_gray(G: BitMatrix, config: EngineConfig | None = None) -> tuple[int, WorkStats]:
    """Visit all ``2^k - 1`` nonzero codewords in Gray-code order.

    Consecutive codewords differ by one generator row, so each step is a
    single addition.  With several workers the index range is cut into
    contiguous blocks; each block builds its first codeword directly.
    """
    config = config or EngineConfig(algorithm="brute_gray")
    k = G.rows
    if k > config.brute_cap:
        raise BruteForceCapError(
            f"brute force over k={k} exceeds the cap of {config.brute_cap}; use a BZ engine")
    rows = [G.row(i).to_int() for i in range(k)]
    total = (1 << k) - 1

    def block(span: tuple[int, int]) -> tuple[int, int]:
        start, stop = span
        code = start ^ (start >> 1)
        acc = 0
        adds = 0
        j = 0
        while code:
            if code & 1:
                acc ^= rows[j]
                adds += 1
            code >>= 1
            j += 1
        best = acc.bit_count()
        for i in range(start + 1, stop):
            acc ^= rows[(i & -i).bit_length() - 1]
            w = acc.bit_count()
            if w < best:
                best = w
        return best, adds + (stop - start - 1)

    spans = parallel.gray_blocks(total, config.workers)
    results = parallel.run_pool(spans, config.workers, block)
    stats = WorkStats(combinations=total, g_final=k)
    d = min(r[0] for r in results)
    stats.row_additions = sum(r[1] for r in results)
    stats.row_accesses = stats.row_additions
    stats.lower = stats.upper = d
    return d, stats


# -- one-round kernels ----------------------------------------------------------

def _single_rows(words: np.ndarray, tally: RoundStats) -> int:
    tally.combinations += words.shape[0]
    tally.row_accesses += words.shape[0]
    return int(row_weights(words).min())


def basic_round(words: np.ndarray, g: int, tally: RoundStats) -> int:
    """Every ``g``-combination summed from scratch: ``g - 1`` additions each."""
    k = words.shape[0]
    if g == 1:
        return _single_rows(words, tally)
    best = _NONE
    it = itertools.combinations(range(k), g)
    while True:
        flat = np.fromiter(itertools.chain.from_iterable(itertools.islice(it, _BATCH)),
                           dtype=np.intp)
        if flat.size == 0:
            break
        idx = flat.reshape(-1, g)
        acc = words[idx[:, 0]]
        for col in range(1, g):
            acc ^= words[idx[:, col]]
        b = idx.shape[0]
        tally.row_additions += b * (g - 1)
        tally.combinations += b
        tally.row_accesses += b * g
        best = min(best, int(row_weights(acc).min()))
    return best


def optimized_round(words: np.ndarray, g: int, tally: RoundStats) -> int:
    """Sum each ``(g-1)``-prefix once, then add every possible last row to it."""
    k = words.shape[0]
    if g == 1:
        return _single_rows(words, tally)
    best = _NONE
    for c in itertools.combinations(range(k - 1), g - 1):
        acc = words[c[0]].copy()
        for i in c[1:]:
            np.bitwise_xor(acc, words[i], out=acc)
        ext = words[c[-1] + 1:] ^ acc
        e = ext.shape[0]
        tally.row_additions += g - 2 + e
        tally.combinations += e
        tally.row_accesses += g - 1 + e
        w = int(row_weights(ext).min())
        if w < best:
            best = w
    return best


class AdditionStack:
    """Incremental partial sums of a combination prefix.

    Entry ``i`` holds the sum of rows ``c[0] .. c[i]``.  Loading a new prefix
    rebuilds only the entries from the left-most changed index, and entry 0
    is a plain copy of a row, so costs no addition.
    """

    def __init__(self, words: np.ndarray, depth: int):
        self.words = words
        self.depth = depth
        self.entries = np.zeros((depth, words.shape[1]), dtype=words.dtype)
        self.current: tuple[int, ...] | None = None

    @property
    def top(self) -> np.ndarray:
        return self.entries[self.depth - 1]

    def load(self, c: tuple[int, ...]) -> tuple[int, int]:
        """Switch to prefix ``c``; returns ``(entries rebuilt, additions)``."""
        t = 0
        prev = self.current
        if prev is not None:
            while t < self.depth and c[t] == prev[t]:
                t += 1
        for i in range(t, self.depth):
            if i == 0:
                self.entries[0] = self.words[c[0]]
            else:
                np.bitwise_xor(self.entries[i - 1], self.words[c[i]], out=self.entries[i])
        self.current = tuple(c)
        rebuilt = self.depth - t
        return rebuilt, rebuilt - (1 if t == 0 and rebuilt else 0)


def stack_round(words: np.ndarray, g: int, tally: RoundStats) -> int:
    k = words.shape[0]
    if g == 1:
        return _single_rows(words, tally)
    stack = AdditionStack(words, g - 1)
    best = _NONE
    for c in itertools.combinations(range(k - 1), g - 1):
        rebuilt, adds = stack.load(c)
        ext = words[c[-1] + 1:] ^ stack.top
        e = ext.shape[0]
        tally.row_additions += adds + e
        tally.combinations += e
        tally.row_accesses += rebuilt + e
        w = int(row_weights(ext).min())
        if w < best:
            best = w
    return best


# -- saved additions ------------------------------------------------------------

def saved_table_bytes(k: int, n: int, s: int) -> int:
    return sum(binomial(k, l) for l in range(1, min(s, k) + 1)) * word_count(n) * 4


class SavedAdditions:
    """Sums of every ``l``-row combination, ``l = 1..s``, stored in lex order.

    Levels are built on demand; level ``l`` comes from level ``l - 1`` plus
    one more row, which keeps the lex order without sorting.
    """

    def __init__(self, words: np.ndarray, s: int, memory_cap: int = DEFAULT_MEMORY_CAP):
        k, nw = words.shape
        if not 1 <= s <= k:
            raise ValueError(f"need 1 <= s <= k, got s={s}, k={k}")
        need = saved_table_bytes(k, nw * 32, s)
        if need > memory_cap:
            raise MemoryCapError(need, memory_cap)
        self.k, self.s = k, s
        self.words = words
        ar = np.arange(k)
        self.levels: list[np.ndarray | None] = [None, words]
        self.lasts: list[np.ndarray | None] = [None, ar]
        self.firsts: list[np.ndarray | None] = [None, ar]
        self.build_additions = 0

    def level(self, l: int) -> np.ndarray:
        if not 1 <= l <= self.s:
            raise ValueError(f"level {l} outside 1..{self.s}")
        while len(self.levels) <= l:
            self._grow()
        return self.levels[l]

    def _grow(self) -> None:
        l = len(self.levels)
        prev, lasts = self.levels[l - 1], self.lasts[l - 1]
        counts = self.k - 1 - lasts
        total = int(counts.sum())
        offsets = np.cumsum(counts) - counts
        right = np.repeat(lasts + 1, counts) + (np.arange(total) - np.repeat(offsets, counts))
        self.levels.append(np.repeat(prev, counts, axis=0) ^ self.words[right])
        self.lasts.append(right)
        self.firsts.append(np.repeat(self.firsts[l - 1], counts))
        self.build_additions += total

    def sizes(self) -> list[int]:
        return [self.levels[l].shape[0] for l in range(1, len(self.levels))]


def build_saved_additions(gamma: BitMatrix | np.ndarray, s: int,
                          memory_cap: int = DEFAULT_MEMORY_CAP) -> SavedAdditions:
    words = gamma.words if isinstance(gamma, BitMatrix) else gamma
    sa = SavedAdditions(words, s, memory_cap)
    sa.level(s)
    return sa


def _left_candidates(sa: SavedAdditions, prev_last: int, remaining: int) -> np.ndarray:
    """Ranks of saved ``s``-blocks that can follow ``prev_last`` with ``remaining`` rows to go."""
    k, s = sa.k, sa.s
    start = index_of(k, s, prev_last)
    stop = index_of(k, s, k - remaining)
    ranks = np.arange(start, stop)
    return ranks[sa.lasts[s][ranks] <= k - 1 - (remaining - s)]


def _unroll_chunks(sa: SavedAdditions, cands: np.ndarray, unroll: int) -> list[np.ndarray]:
    """Left blocks in unroll order, cut into runs that share first and last row."""
    s = sa.s
    firsts = sa.firsts[s][cands]
    lasts = sa.lasts[s][cands]
    order = np.lexsort((cands, lasts, firsts))
    cands, firsts, lasts = cands[order], firsts[order], lasts[order]
    breaks = np.flatnonzero((np.diff(firsts) != 0) | (np.diff(lasts) != 0)) + 1
    chunks = []
    for run in np.split(cands, breaks):
        for i in range(0, run.shape[0], unroll):
            chunks.append(run[i:i + unroll])
    return chunks


class _SavedRound:
    def __init__(self, sa: SavedAdditions, g: int, unroll: int):
        self.sa = sa
        self.g = g
        self.unroll = unroll
        self.f = (g - 1) // sa.s
        self.b = g - self.f * sa.s
        self.left = sa.level(sa.s)
        self.right = sa.level(self.b)
        k = sa.k
        self.rstart = [index_of(k, self.b, e) for e in range(k)]

    def run_group(self, group: np.ndarray) -> tuple[int, RoundStats]:
        tally = RoundStats(self.g)
        w = self._descend(group, (), self.g - self.sa.s, self.f, tally)
        return w, tally

    def _descend(self, cands, prefix, remaining, depth, tally) -> int:
        if depth == 1:
            return self._leaf(cands, prefix, tally)
        best = _NONE
        lasts = self.sa.lasts[self.sa.s]
        for r in cands:
            sub = _left_candidates(self.sa, int(lasts[r]), remaining)
            if sub.size:
                best = min(best, self._descend(sub, prefix + (int(r),), remaining - self.sa.s,
                                               depth - 1, tally))
        return best

    def _leaf(self, cands, prefix, tally) -> int:
        f = self.f
        acc = self.left[cands]
        for r in prefix:
            acc ^= self.left[r]
        tally.row_additions += (f - 1) * cands.shape[0]
        lasts = self.sa.lasts[self.sa.s]
        best = _NONE
        if self.unroll <= 1:
            for i, r in enumerate(cands):
                rights = self.right[self.rstart[lasts[r]]:]
                ext = rights ^ acc[i]
                e = ext.shape[0]
                tally.row_additions += e
                tally.combinations += e
                tally.row_accesses += f + e
                best = min(best, int(row_weights(ext).min()))
            return best
        pos = {int(r): i for i, r in enumerate(cands)}
        for chunk in _unroll_chunks(self.sa, cands, self.unroll):
            rights = self.right[self.rstart[lasts[chunk[0]]]:]
            rows = acc[[pos[int(r)] for r in chunk]]
            ext = rows[:, None, :] ^ rights[None, :, :]
            e = rights.shape[0]
            c = chunk.shape[0]
            tally.row_additions += c * e
            tally.combinations += c * e
            tally.row_accesses += f * c + e
            best = min(best, int(row_weights(ext.reshape(c * e, -1)).min()))
        return best


def saved_round(sa: SavedAdditions, g: int, tally: RoundStats, unroll: int = 1,
                workers: int = 1) -> int:
    """One round with saved additions.

    A ``g``-combination is split into ``f`` saved left blocks of ``s`` rows and
    a saved right block of ``b = g - f*s`` rows, so it costs ``f`` additions.
    The first recursion level is cut by its first row into tasks that a pool
    picks up dynamically; minima and counters are merged in task order.
    """
    s = sa.s
    if g <= s:
        return _single_rows(sa.level(g), tally)
    rnd = _SavedRound(sa, g, unroll)
    cands = _left_candidates(sa, -1, g)
    firsts = sa.firsts[s][cands]
    groups = np.split(cands, np.flatnonzero(np.diff(firsts)) + 1)
    best = _NONE
    for w, t in parallel.run_pool(groups, workers, rnd.run_group):
        best = min(best, w)
        tally.absorb(t)
    return best


# -- driver ---------------------------------------------------------------------

Kernel = Callable[[int, int, RoundStats], int]


def _bz_loop(gs: GammaSet, bounds: Bounds | None, kernel: Kernel,
             stats: WorkStats) -> tuple[int, WorkStats]:
    if bounds is None:
        bounds = Bounds(1, singleton_upper(gs.n, gs.k))
    L, U = bounds.lower, bounds.upper
    g = 1
    while g <= gs.k and L < U:
        rs = RoundStats(g)
        for j in range(gs.m):
            U = min(U, kernel(j, g, rs))
            rs.gammas += 1
            if U <= L:
                break
        L = max(L, lower_bound(gs.m, g, gs.k, gs.k_last))
        rs.lower, rs.upper = L, U
        stats.add_round(rs)
        log.debug("g=%d L=%d U=%d additions=%d", g, L, U, rs.row_additions)
        g += 1
    stats.lower, stats.upper = L, U
    return U, stats


def _scheduled_kernel(gs: GammaSet, schedule: parallel.ScheduleConfig) -> Kernel:
    def kernel(j: int, g: int, rs: RoundStats) -> int:
        out = parallel.scheduled_round(gs.gammas[j].words, g, schedule)
        rs.row_additions += out.result.row_additions
        rs.combinations += out.result.combinations
        rs.messages.append(out.messages)
        return out.result.min_weight
    return kernel


def _simple(round_fn) -> Callable:
    def engine(gs: GammaSet, bounds: Bounds | None = None,
               config: EngineConfig | None = None) -> tuple[int, WorkStats]:
        config = config or EngineConfig()
        if config.schedule is not None and config.schedule.mode != "serial":
            kernel = _scheduled_kernel(gs, config.schedule)
        else:
            def kernel(j, g, rs):
                return round_fn(gs.gammas[j].words, g, rs)
        return _bz_loop(gs, bounds, kernel, WorkStats())
    engine.__name__ = round_fn.__name__.replace("_round", "")
    return engine


bz_basic = _simple(basic_round)
bz_basic.__doc__ = "Brouwer-Zimmermann with every combination summed from scratch."
bz_optimized = _simple(optimized_round)
bz_optimized.__doc__ = "Brouwer-Zimmermann reusing each (g-1)-prefix for all last rows."
bz_stack = _simple(stack_round)
bz_stack.__doc__ = "Brouwer-Zimmermann with an incremental stack of prefix sums."


def _saved_engine(gs: GammaSet, bounds: Bounds | None, config: EngineConfig,
                  unroll: int) -> tuple[int, WorkStats]:
    s = min(config.s, gs.k)
    tables = [SavedAdditions(gm.words, s, config.memory_cap) for gm in gs.gammas]
    stats = WorkStats()

    def kernel(j: int, g: int, rs: RoundStats) -> int:
        return saved_round(tables[j], g, rs, unroll=unroll, workers=config.workers)

    d, stats = _bz_loop(gs, bounds, kernel, stats)
    stats.table_additions = sum(t.build_additions for t in tables)
    return d, stats


def bz_saved(gs: GammaSet, bounds: Bounds | None = None,
             config: EngineConfig | None = None) -> tuple[int, WorkStats]:
    return _saved_engine(gs, bounds, config or EngineConfig(), unroll=1)


def bz_saved_unrolled(gs: GammaSet, bounds: Bounds | None = None,
                      config: EngineConfig | None = None) -> tuple[int, WorkStats]:
    """Same additions as :func:`bz_saved`; left blocks sharing a last row share one right pass."""
    config = config or EngineConfig(algorithm="saved_unrolled")
    return _saved_engine(gs, bounds, config, unroll=max(config.unroll, 2))


BZ_ENGINES = {
    "basic": bz_basic,
    "optimized": bz_optimized,
    "stack": bz_stack,
    "saved": bz_saved,
    "saved_unrolled": bz_saved_unrolled,
}


def min_weight(G: BitMatrix, config: EngineConfig | None = None) -> tuple[int, WorkStats, dict]:
    """Minimum distance of the code spanned by the rows of ``G``.

    ``G`` may be rank deficient; it is reduced to a basis first and the
    effective dimension is reported in the summary.
    """
    config = config or EngineConfig()
    basis = row_basis(G)
    if basis.rows == 0:
        raise ZeroCodeError("zero code: the generator matrix has no nonzero row")
    summary = {"n": basis.cols, "k": basis.rows, "input_rows": G.rows,
               "algorithm": config.algorithm}
    if config.algorithm == "brute_gray":
        d, stats = brute_force_gray(basis, config)
        summary.update(m=None, k_last=None)
        return d, stats, summary
    gs = best_gamma_over_permutations(basis, config.permutation_trials, config.seed)
    summary.update(gs.summary())
    summary["trial"] = gs.extra.get("trial", 0)
    if config.schedule is not None and config.schedule.mode != "serial":
        # prefix tasks always run the stack node engine
        summary["node_engine"] = "stack"
        d, stats = _simple(stack_round)(gs, None, config)
    else:
        d, stats = BZ_ENGINES[config.algorithm](gs, None, config)
    return d, stats, summary
