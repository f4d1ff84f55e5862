"""Closed-form addition counts for each engine.

All counts are exact integers.  ``n`` multiplies row additions into bit
additions (pass ``n=1`` to compare with the engines' row counters).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

from .enumeration import binomial

TABLE_ALGORITHMS = ("basic", "optimized", "stack", "saved")


def _check(k: int, g: int) -> None:
    if not 1 <= g <= k:
        raise ValueError(f"need 1 <= g <= k, got k={k}, g={g}")


def cost_brute(k: int) -> int:
    if k < 1:
        raise ValueError("k must be >= 1")
    return (1 << k) - 1


def cost_basic(k: int, g: int, n: int = 1) -> int:
    _check(k, g)
    return binomial(k, g) * (g - 1) * n


def cost_optimized(k: int, g: int, n: int = 1) -> int:
    # one term per position j of the last prefix row (1-based), j = g..k
    _check(k, g)
    if g == 1:
        return 0
    return n * sum(binomial(j - 2, g - 2) * (g + k - j - 1) for j in range(g, k + 1))


def cost_stack(k: int, g: int, n: int = 1) -> int:
    _check(k, g)
    return n * sum(binomial(k - i, g - i) for i in range(g - 1))


def cost_saved(k: int, g: int, n: int = 1, s: int = 5) -> int:
    """Additions with saved tables of depth ``s``; zero while ``g <= s``."""
    _check(k, g)
    if s < 1:
        raise ValueError("s must be >= 1")
    if g <= s:
        return 0
    f = (g - 1) // s
    b = g - s * f
    total = sum((binomial(k - j, b) + f - 1) * binomial(j - 1, f * s - 1)
                for j in range(f * s, k - b + 1))
    return n * total


def cost(algorithm: str, k: int, g: int, n: int = 1, s: int = 5) -> int:
    if algorithm == "basic":
        return cost_basic(k, g, n)
    if algorithm == "optimized":
        return cost_optimized(k, g, n)
    if algorithm == "stack":
        return cost_stack(k, g, n)
    if algorithm in ("saved", "saved_unrolled"):
        return cost_saved(k, g, n, s)
    raise ValueError(f"no cost model for {algorithm!r}")


def format_billions(additions: int) -> str:
    """Value in units of 1e9 at the precision the reference table uses.

    Three decimals below 1, two below 100, one from there on; halves round
    away from zero.
    """
    v = Decimal(additions) / Decimal(10 ** 9)
    if v < 1:
        q = Decimal("0.001")
    elif v < 100:
        q = Decimal("0.01")
    else:
        q = Decimal("0.1")
    return str(v.quantize(q, rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class CostReport:
    algorithm: str
    k: int
    g: int
    n: int
    s: int
    additions: int

    @property
    def rounded_billions(self) -> str:
        return format_billions(self.additions)


def cost_table(k_list, g_list, s: int = 5, n: int = 1,
               algorithms=TABLE_ALGORITHMS) -> list[list[CostReport]]:
    """Rows are algorithms, columns are ``(k, g)`` pairs in k-major order."""
    pairs = [(k, g) for k in k_list for g in g_list]
    return [[CostReport(a, k, g, n, s, cost(a, k, g, n, s)) for k, g in pairs]
            for a in algorithms]


def render_text(table: list[list[CostReport]], exact: bool = False) -> str:
    """Aligned table in units of 1e9, or exact integers with ``exact``."""
    head = ["algorithm"] + [f"k={c.k},g={c.g}" for c in table[0]]
    body = [[row[0].algorithm] + [str(c.additions) if exact else c.rounded_billions
                                  for c in row] for row in table]
    widths = [max(len(r[i]) for r in [head] + body) for i in range(len(head))]
    lines = []
    for r in [head] + body:
        cells = [r[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(r[1:], widths[1:])]
        lines.append("  ".join(cells))
    return "\n".join(lines) + "\n"


def render_csv(table: list[list[CostReport]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["algorithm", "k", "g", "n", "s", "additions", "billions"])
    for row in table:
        for c in row:
            w.writerow([c.algorithm, c.k, c.g, c.n, c.s, c.additions, c.rounded_billions])
    return buf.getvalue()
