"""Gamma matrices over disjoint information sets, and the distance bounds."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .f2core import BitMatrix, rank


class RankDeficientError(ValueError):
    """Raised when a generator matrix does not have full row rank."""


@dataclass
class Bounds:
    lower: int
    upper: int


@dataclass
class GammaSet:
    """Systematized copies of one generator matrix.

    ``gammas[j]`` for ``j < m - 1`` holds the ``k x k`` identity in stored
    columns ``j*k .. j*k+k-1``.  The last matrix carries ``I_{k_last}`` in its
    top rows at columns ``(m-1)*k ..`` and zeros below; when every block is a
    full information set ``k_last == k``.  Stored column ``c`` is original
    column ``column_perm[c]`` for every matrix in the set.
    """

    gammas: list[BitMatrix]
    ranks: list[int]
    k_last: int
    column_perm: np.ndarray
    k: int
    n: int
    extra: dict = field(default_factory=dict)

    @property
    def m(self) -> int:
        return len(self.gammas)

    def summary(self) -> dict:
        return {"m": self.m, "k": self.k, "n": self.n, "k_last": self.k_last,
                "ranks": list(self.ranks)}


def _diagonalize_block(w: np.ndarray, perm: np.ndarray, pos: int) -> int:
    """Put as much of an identity as possible at columns ``pos, pos+1, ...``.

    Column swaps only touch columns ``>= pos``.  Returns the rank reached.
    """
    k, n = w.shape
    r = 0
    c = pos
    while r < k and pos + r < n:
        t = pos + r
        # first workable column from t onwards
        sub = w[r:, t:]
        cols = np.nonzero(sub.any(axis=0))[0]
        if cols.size == 0:
            break
        c = t + cols[0]
        if c != t:
            w[:, [t, c]] = w[:, [c, t]]
            perm[[t, c]] = perm[[c, t]]
        p = r + np.nonzero(w[r:, t])[0][0]
        if p != r:
            w[[r, p]] = w[[p, r]]
        mask = w[:, t].astype(bool)
        mask[r] = False
        w[mask] ^= w[r]
        r += 1
    return r


def compute_gamma_matrices(G: BitMatrix) -> GammaSet:
    k, n = G.shape
    w = G.to_bits().copy()
    if k == 0 or k > n or rank(w) != k:
        raise RankDeficientError(
            f"generator matrix {k}x{n} must have full row rank; reduce it to a basis first")
    perm = np.arange(n)
    snaps: list[tuple[np.ndarray, np.ndarray]] = []
    ranks: list[int] = []
    pos = 0
    k_last = k
    while pos < n:
        trial = w.copy()
        trial_perm = perm.copy()
        r = _diagonalize_block(trial, trial_perm, pos)
        if r == k:
            w, perm = trial, trial_perm
            snaps.append((w.copy(), perm.copy()))
            ranks.append(k)
            pos += k
            continue
        if r > 0:
            w, perm = trial, trial_perm
            snaps.append((w.copy(), perm.copy()))
            ranks.append(r)
            k_last = r
        break
    # re-express every snapshot in the final column order
    inv_final = perm
    gammas = []
    for bits, p in snaps:
        where = np.empty(n, dtype=np.int64)
        where[p] = np.arange(n)
        gammas.append(BitMatrix.from_bits(bits[:, where[inv_final]]))
    return GammaSet(gammas=gammas, ranks=ranks, k_last=k_last,
                    column_perm=perm.copy(), k=k, n=n)


def best_gamma_over_permutations(G: BitMatrix, trials: int = 10, seed: int = 0) -> GammaSet:
    """Try the identity plus ``trials`` random column permutations.

    Keeps the set with the largest ``(m, k_last)``; the earliest wins ties.
    Permutations come from numpy's PCG64 generator seeded with ``seed``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    k, n = G.shape
    rng = np.random.Generator(np.random.PCG64(seed))
    bits = G.to_bits()
    best = compute_gamma_matrices(G)
    best.extra["trial"] = 0
    for t in range(1, trials + 1):
        p = rng.permutation(n)
        gs = compute_gamma_matrices(BitMatrix.from_bits(bits[:, p]))
        if (gs.m, gs.k_last) > (best.m, best.k_last):
            gs.column_perm = p[gs.column_perm]
            gs.extra["trial"] = t
            best = gs
    return best


def lower_bound(m: int, g: int, k: int, k_last: int) -> int:
    """Weight bound for codewords not yet enumerated after round ``g``."""
    return (m - 1) * (g + 1) + max(0, g + 1 - k + k_last)


def singleton_upper(n: int, k: int) -> int:
    return n - k + 1
