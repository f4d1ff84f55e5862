"""Combination orders, Gray codes and binomial index arithmetic.

Three orders on ``g``-subsets of ``{0, ..., k-1}`` are provided:

``lex``
    right-most element changes fastest: (0,1,2), (0,1,3), ..., (0,2,3), ...
``left_lex``
    left-most element changes fastest (co-lexicographic): (0,1,2), (0,1,3),
    (0,2,3), (1,2,3), (0,1,4), ...
``unroll``
    first element changes slowest, the last element next, the middle ones
    fastest (lexicographically): (0,1,2), (0,1,3), (0,2,3), (0,1,4), (0,2,4),
    (0,3,4), (1,2,3), ...
"""

from __future__ import annotations

import itertools
from math import comb
from typing import Iterator

Combination = tuple[int, ...]

ORDERS = ("lex", "left_lex", "unroll")


def gray_code(i: int) -> int:
    """Reflected binary Gray code of ``i``."""
    if i < 0:
        raise ValueError("gray_code needs i >= 0")
    return i ^ (i >> 1)


def gray_diff(i: int) -> int:
    """Bit position that flips between ``gray_code(i-1)`` and ``gray_code(i)``."""
    if i < 1:
        raise ValueError("gray_diff needs i >= 1")
    return (i & -i).bit_length() - 1


def binomial(p: int, q: int) -> int:
    """Exact binomial coefficient; zero outside ``0 <= q <= p``."""
    if p < 0:
        raise ValueError(f"binomial needs p >= 0, got {p}")
    if q < 0 or q > p:
        return 0
    return comb(p, q)


def index_of(p: int, q: int, r: int) -> int:
    """Number of ``q``-subsets of ``range(p)`` whose smallest element is ``<= r``.

    Equivalently the lex rank of the first ``q``-subset whose smallest
    element is ``r + 1``.  ``r = -1`` gives 0.
    """
    return binomial(p, q) - binomial(p - r - 1, q)


def left_limit(k: int, a: int, g: int) -> int:
    """Lex rank of the first saved ``a``-subset that cannot start a ``g``-subset."""
    return binomial(k, a) - binomial(g - 1, a)


def lex_rank(c: Combination, k: int) -> int:
    """Position of ``c`` among the ``len(c)``-subsets of ``range(k)`` in lex order."""
    g = len(c)
    return binomial(k, g) - 1 - sum(binomial(k - 1 - x, g - i) for i, x in enumerate(c))


def lex_unrank(r: int, k: int, g: int) -> Combination:
    out = []
    x = 0
    for i in range(g):
        while True:
            # subsets that start with x at position i
            block = binomial(k - x - 1, g - i - 1)
            if r < block:
                break
            r -= block
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


def _check(k: int, g: int) -> None:
    if not 1 <= g <= k:
        raise ValueError(f"need 1 <= g <= k, got k={k}, g={g}")


def lex_first(k: int, g: int) -> Combination:
    _check(k, g)
    return tuple(range(g))


def lex_next(c: Combination, k: int) -> Combination | None:
    """Lexicographic successor of ``c`` or ``None`` after the last subset."""
    g = len(c)
    for i in range(g - 1, -1, -1):
        if c[i] < k - g + i:
            head = c[i] + 1
            return c[:i] + tuple(range(head, head + g - i))
    return None


def left_lex_next(c: Combination, k: int) -> Combination | None:
    """Co-lexicographic successor: bump the left-most element that has room."""
    g = len(c)
    for i in range(g):
        limit = c[i + 1] if i + 1 < g else k
        if c[i] + 1 < limit:
            return tuple(range(i)) + (c[i] + 1,) + c[i + 1:]
    return None


def unroll_next(c: Combination, k: int) -> Combination | None:
    """Successor in the unrolling order (first slowest, then last, then middle)."""
    g = len(c)
    if g <= 2:
        return lex_next(c, k)
    first, last = c[0], c[-1]
    middle = c[1:-1]
    # middle indices range over first+1 .. last-1
    span = last - first - 1
    shifted = tuple(x - first - 1 for x in middle)
    nxt = lex_next(shifted, span)
    if nxt is not None:
        return (first,) + tuple(x + first + 1 for x in nxt) + (last,)
    if last + 1 < k:
        return (first,) + tuple(range(first + 1, first + g - 1)) + (last + 1,)
    if first + g < k:
        return tuple(range(first + 1, first + 1 + g))
    return None


_NEXT = {"lex": lex_next, "left_lex": left_lex_next, "unroll": unroll_next}
_NEXT["unroll_variant"] = unroll_next


def combinations(k: int, g: int, order: str = "lex") -> Iterator[Combination]:
    """All ``g``-subsets of ``range(k)`` in the requested order."""
    _check(k, g)
    if order == "lex":
        # itertools emits exactly the lex order, only faster
        yield from itertools.combinations(range(k), g)
        return
    step = _NEXT[order]
    c: Combination | None = tuple(range(g))
    while c is not None:
        yield c
        c = step(c, k)


class CombinationCursor:
    """Value-semantic cursor over the ``g``-subsets of ``range(k)``.

    >>> cur = CombinationCursor(5, 3)
    >>> cur.current, cur.advance()
    ((0, 1, 2), (0, 1, 3))
    """

    __slots__ = ("k", "g", "order", "current", "exhausted")

    def __init__(self, k: int, g: int, order: str = "lex", start: Combination | None = None):
        _check(k, g)
        if order not in _NEXT:
            raise ValueError(f"unknown order {order!r}; expected one of {ORDERS}")
        self.k, self.g, self.order = k, g, order
        self.current: Combination = tuple(range(g)) if start is None else tuple(start)
        self.exhausted = False

    def advance(self) -> Combination | None:
        if self.exhausted:
            raise StopIteration("cursor already exhausted")
        nxt = _NEXT[self.order](self.current, self.k)
        if nxt is None:
            self.exhausted = True
            return None
        self.current = nxt
        return nxt

    def clone(self) -> "CombinationCursor":
        other = CombinationCursor(self.k, self.g, self.order, self.current)
        other.exhausted = self.exhausted
        return other

    def __iter__(self) -> Iterator[Combination]:
        cur = self.clone()
        while not cur.exhausted:
            yield cur.current
            cur.advance()
