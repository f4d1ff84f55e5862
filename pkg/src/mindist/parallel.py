"""Work decomposition and scheduling.

Two layers live here.  Shared-memory helpers split a single engine's loop
(contiguous Gray-code blocks, dynamically scheduled task pools).  The prefix
layer breaks one ``(g, Gamma)`` round into prefixes, the leading ``p`` indices
of a combination, and hands them out either dynamically (a coordinator and
worker threads exchanging counted messages over queues) or statically
(cyclic or snake-cyclic pre-assignment to peer threads).
"""

from __future__ import annotations

import queue
import threading
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence, TypeVar

import numpy as np

from .enumeration import Combination, binomial, combinations
from .f2core import row_weights

T = TypeVar("T")
R = TypeVar("R")

MODES = ("serial", "dynamic", "dynamic_2cm", "static_cyclic", "static_snake")
PREFIX_ORDERS = ("lex", "left_lex")
DEFAULT_DYNAMIC_PREFIX = 3
DEFAULT_STATIC_PREFIX = 4
NO_WEIGHT = 1 << 62


class ScheduleError(RuntimeError):
    """A worker failed; the round was aborted."""


@dataclass(frozen=True)
class Prefix:
    indices: Combination
    g: int

    @property
    def p(self) -> int:
        return len(self.indices)


@dataclass
class ScheduleConfig:
    """How one round is split into prefix tasks.

    ``prefix_size`` is absolute for the dynamic modes and relative for the
    static ones (the actual prefix size is ``g - prefix_size``).  ``workers``
    counts the threads that process prefixes; in dynamic modes the
    coordinator runs on the calling thread on top of them.
    """

    mode: str = "serial"
    order: str = "lex"
    prefix_size: int | None = None
    workers: int = 1

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown schedule {self.mode!r}; expected one of {MODES}")
        if self.order not in PREFIX_ORDERS:
            raise ValueError(f"unknown prefix order {self.order!r}; expected one of {PREFIX_ORDERS}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.prefix_size is None:
            self.prefix_size = (DEFAULT_STATIC_PREFIX if self.is_static
                                else DEFAULT_DYNAMIC_PREFIX)
        if self.prefix_size < 0 or (not self.is_static and self.prefix_size < 1):
            raise ValueError(f"invalid prefix size {self.prefix_size}")

    @property
    def is_static(self) -> bool:
        return self.mode.startswith("static")

    def actual_prefix(self, g: int) -> int:
        # clamp instead of replicating work when the prefix does not fit in g
        if self.is_static:
            return max(1, g - self.prefix_size)
        return min(self.prefix_size, g)


@dataclass
class TaskResult:
    min_weight: int = NO_WEIGHT
    row_additions: int = 0
    combinations: int = 0

    def merge(self, other: "TaskResult") -> None:
        self.min_weight = min(self.min_weight, other.min_weight)
        self.row_additions += other.row_additions
        self.combinations += other.combinations


@dataclass
class ScheduleOutcome:
    result: TaskResult
    tasks: int
    messages: int = 0
    assignment_messages: int = 0
    per_worker: list[list] = field(default_factory=list)


# -- prefixes ---------------------------------------------------------------

def prefix_count(k: int, g: int, p: int) -> int:
    if not 1 <= p <= g <= k:
        raise ValueError(f"need 1 <= p <= g <= k, got k={k}, g={g}, p={p}")
    return binomial(k - (g - p), p)


def enumerate_prefixes(k: int, g: int, p: int, order: str = "lex") -> list[Prefix]:
    """Prefixes whose right-most index leaves room for ``g - p`` more rows."""
    prefix_count(k, g, p)
    if order not in PREFIX_ORDERS:
        raise ValueError(f"unknown prefix order {order!r}")
    return [Prefix(c, g) for c in combinations(k - (g - p), p, order)]


def prefix_extensions(c: Prefix | Combination, k: int, g: int) -> Iterable[Combination]:
    """The ``g``-combinations covered by prefix ``c``."""
    idx = c.indices if isinstance(c, Prefix) else tuple(c)
    lo = idx[-1] + 1
    q = g - len(idx)
    if q == 0:
        yield idx
        return
    for tail in combinations(k - lo, q):
        yield idx + tuple(lo + t for t in tail)


def stack_extension(acc: np.ndarray, words: np.ndarray, lo: int, q: int) -> TaskResult:
    """Node engine: minimum weight of ``acc`` plus every ``q``-subset of rows ``lo..k-1``.

    Partial sums of the first ``q - 1`` suffix rows sit on a stack that is only
    rebuilt from the left-most changed index; the last row is added to all
    candidates at once.
    """
    k = words.shape[0]
    out = TaskResult()
    if q == 0:
        out.min_weight = int(row_weights(acc[None, :])[0])
        out.combinations = 1
        return out
    if q == 1:
        ext = words[lo:] ^ acc
        out.row_additions = ext.shape[0]
        out.combinations = ext.shape[0]
        out.min_weight = int(row_weights(ext).min())
        return out
    stack = np.empty((q - 1, words.shape[1]), dtype=words.dtype)
    prev: Combination | None = None
    depth = q - 1
    for c in combinations(k - 1 - lo, depth):
        t = 0
        if prev is not None:
            while c[t] == prev[t]:
                t += 1
        for i in range(t, depth):
            below = acc if i == 0 else stack[i - 1]
            np.bitwise_xor(below, words[lo + c[i]], out=stack[i])
        out.row_additions += depth - t
        start = lo + c[-1] + 1
        ext = words[start:] ^ stack[-1]
        out.row_additions += ext.shape[0]
        out.combinations += ext.shape[0]
        w = int(row_weights(ext).min())
        if w < out.min_weight:
            out.min_weight = w
        prev = c
    return out


def process_prefix(c: Prefix | Combination, words: np.ndarray, g: int,
                   engine_hook: Callable[..., TaskResult] | None = None) -> TaskResult:
    """Add the prefix rows once, then let the node engine enumerate suffixes."""
    idx = c.indices if isinstance(c, Prefix) else tuple(c)
    acc = words[idx[0]].copy()
    for i in idx[1:]:
        np.bitwise_xor(acc, words[i], out=acc)
    hook = engine_hook or stack_extension
    res = hook(acc, words, idx[-1] + 1, g - len(idx))
    res.row_additions += len(idx) - 1
    return res


# -- static assignment ------------------------------------------------------

def assign_static(tasks: Sequence[T], workers: int, snake: bool = False) -> list[list[T]]:
    """Cyclic distribution; with ``snake`` every second row runs backwards."""
    if workers < 1:
        raise ValueError("workers must be >= 1")
    out: list[list[T]] = [[] for _ in range(workers)]
    for t, task in enumerate(tasks):
        row, col = divmod(t, workers)
        if snake and row % 2 == 1:
            col = workers - 1 - col
        out[col].append(task)
    return out


def run_static(tasks: Sequence[T], workers: int, handler: Callable[[T], TaskResult],
               snake: bool = False) -> ScheduleOutcome:
    lists = assign_static(tasks, workers, snake)
    local = [TaskResult() for _ in range(workers)]
    errors: list[BaseException | None] = [None] * workers

    def peer(wid: int) -> None:
        try:
            for task in lists[wid]:
                local[wid].merge(handler(task))
        except BaseException as exc:  # reported after join
            errors[wid] = exc

    if workers == 1:
        peer(0)
    else:
        threads = [threading.Thread(target=peer, args=(w,), daemon=True) for w in range(workers)]
        for th in threads:
            th.start()
        for th in threads:
            th.join()
    for wid, exc in enumerate(errors):
        if exc is not None:
            raise ScheduleError(f"static worker {wid} failed: {exc!r}") from exc
    total = TaskResult()
    for r in local:
        total.merge(r)
    return ScheduleOutcome(result=total, tasks=len(tasks), per_worker=lists)


# -- dynamic coordinator/worker protocol ------------------------------------

_POISON = object()


def _messages_for(tasks: Sequence[T], batch: int) -> deque:
    if batch == 1:
        return deque([t] for t in tasks)
    if batch != 2:
        raise ValueError("batch must be 1 or 2")
    msgs: deque = deque()
    lo, hi = 0, len(tasks) - 1
    while lo < hi:
        msgs.append([tasks[lo], tasks[hi]])
        lo += 1
        hi -= 1
    if lo == hi:
        msgs.append([tasks[lo]])
    return msgs


def run_dynamic(tasks: Sequence[T], workers: int, handler: Callable[[T], TaskResult],
                batch: int = 1) -> ScheduleOutcome:
    """One coordinator hands out prefixes on request and merges local minima.

    With ``batch=2`` each message carries one task from the front of the
    order and one from the back.  ``messages`` counts task hand-offs plus
    result replies; the terminal poison markers are not counted.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    pending = _messages_for(tasks, batch)
    inboxes = [queue.Queue() for _ in range(workers)]
    outbox: queue.Queue = queue.Queue()
    handled: list[list[T]] = [[] for _ in range(workers)]

    def worker(wid: int) -> None:
        while True:
            msg = inboxes[wid].get()
            if msg is _POISON:
                return
            try:
                res = TaskResult()
                for task in msg:
                    res.merge(handler(task))
                    handled[wid].append(task)
            except BaseException as exc:
                outbox.put((wid, msg, exc))
                return
            outbox.put((wid, msg, res))

    threads = [threading.Thread(target=worker, args=(w,), daemon=True) for w in range(workers)]
    for th in threads:
        th.start()

    total = TaskResult()
    messages = assignments = 0
    busy = 0
    for wid in range(workers):
        if pending:
            inboxes[wid].put(pending.popleft())
            messages += 1
            assignments += 1
            busy += 1
        else:
            inboxes[wid].put(_POISON)
    failure = None
    while busy:
        wid, msg, res = outbox.get()
        busy -= 1
        messages += 1
        if isinstance(res, BaseException):
            failure = (wid, msg, res)
            break
        total.merge(res)
        if pending:
            inboxes[wid].put(pending.popleft())
            messages += 1
            assignments += 1
            busy += 1
        else:
            inboxes[wid].put(_POISON)
    if failure is not None:
        for box in inboxes:
            box.put(_POISON)
    for th in threads:
        th.join()
    if failure is not None:
        wid, msg, exc = failure
        raise ScheduleError(f"dynamic worker {wid} failed on {msg!r}: {exc!r}") from exc
    return ScheduleOutcome(result=total, tasks=len(tasks), messages=messages,
                           assignment_messages=assignments, per_worker=handled)


def scheduled_round(words: np.ndarray, g: int, schedule: ScheduleConfig,
                    engine_hook: Callable[..., TaskResult] | None = None) -> ScheduleOutcome:
    """Minimum weight over all ``g``-combinations of ``words`` via prefix tasks."""
    k = words.shape[0]
    p = schedule.actual_prefix(g)
    tasks = enumerate_prefixes(k, g, p, schedule.order)

    def handler(pr: Prefix) -> TaskResult:
        return process_prefix(pr, words, g, engine_hook)

    mode = schedule.mode
    if mode == "dynamic":
        return run_dynamic(tasks, schedule.workers, handler, batch=1)
    if mode == "dynamic_2cm":
        return run_dynamic(tasks, schedule.workers, handler, batch=2)
    if mode in ("static_cyclic", "static_snake"):
        return run_static(tasks, schedule.workers, handler, snake=mode == "static_snake")
    total = TaskResult()
    for pr in tasks:
        total.merge(handler(pr))
    return ScheduleOutcome(result=total, tasks=len(tasks), per_worker=[list(tasks)])


# -- shared-memory helpers ----------------------------------------------------

def gray_blocks(total: int, workers: int) -> list[tuple[int, int]]:
    """Split Gray indices ``1..total`` into contiguous ``[start, stop)`` blocks."""
    workers = max(1, min(workers, total))
    base, extra = divmod(total, workers)
    blocks = []
    start = 1
    for w in range(workers):
        size = base + (1 if w < extra else 0)
        blocks.append((start, start + size))
        start += size
    return blocks


def run_pool(tasks: Sequence[T], workers: int, fn: Callable[[T], R]) -> list[R]:
    """Run ``fn`` over ``tasks`` with dynamic scheduling; results in task order."""
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))
