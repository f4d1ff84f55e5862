"""Shared oracles and the acceptance-line reporter.

The oracles below deliberately avoid the package's own bit packing and
elimination code: they work on plain 0/1 numpy arrays with integer matrix
products mod 2.
"""

from __future__ import annotations

import itertools

import numpy as np
import pytest

_ACCEPTANCE: dict[int, tuple[str, str]] = {}


def oracle_codewords(bits: np.ndarray) -> np.ndarray:
    """Every codeword (including zero) spanned by the rows of ``bits``."""
    bits = np.asarray(bits, dtype=np.int64)
    k = bits.shape[0]
    msgs = np.array(list(itertools.product((0, 1), repeat=k)), dtype=np.int64)
    return msgs @ bits % 2


def oracle_distance(bits: np.ndarray) -> int:
    """Minimum weight over nonzero codewords, by exhaustive enumeration."""
    words = oracle_codewords(bits)
    w = words.sum(axis=1)
    w = w[words.any(axis=1)]
    return int(w.min())


def oracle_rank(bits: np.ndarray) -> int:
    """Rank over F2 by plain row reduction on Python lists."""
    rows = [int("".join(map(str, r[::-1])), 2) for r in np.asarray(bits, dtype=np.int64)]
    pivots: dict[int, int] = {}
    for v in rows:
        while v:
            top = v.bit_length() - 1
            if top not in pivots:
                pivots[top] = v
                break
            v ^= pivots[top]
    return len(pivots)


def random_full_rank_bits(rng: np.random.Generator, k: int, n: int) -> np.ndarray:
    while True:
        b = rng.integers(0, 2, size=(k, n), dtype=np.uint8)
        if oracle_rank(b) == k:
            return b


HAMMING_7_4 = np.array([[1, 0, 0, 0, 0, 1, 1],
                        [0, 1, 0, 0, 1, 0, 1],
                        [0, 0, 1, 0, 1, 1, 0],
                        [0, 0, 0, 1, 1, 1, 1]], dtype=np.uint8)


def golay_23() -> np.ndarray:
    # cyclic shifts of g(x) = x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1
    g = [1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1]
    rows = np.zeros((12, 23), dtype=np.uint8)
    for i in range(12):
        rows[i, i:i + 12] = g
    return rows


def extend_bits(bits: np.ndarray) -> np.ndarray:
    return np.hstack([bits, (bits.sum(axis=1) % 2)[:, None]]).astype(np.uint8)


@pytest.fixture
def acceptance():
    """Record a criterion outcome; the terminal summary prints one line each."""
    def record(number: int, ok: bool, detail: str = "", label: str | None = None):
        status = label or ("PASS" if ok else "FAIL")
        _ACCEPTANCE[number] = (status, detail)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        status, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {detail}")
