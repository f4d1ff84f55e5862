"""Bit-packed vectors and matrices over F2.

Bit ``i`` of a vector lives in word ``i // 32`` at bit position ``i % 32``
(little-endian within the word).  Padding bits past the last valid position
are kept at zero after every mutating operation, so weights never need a mask.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

WORD_BITS = 32
WORD_DTYPE = np.uint32


def word_count(n: int) -> int:
    return (n + WORD_BITS - 1) // WORD_BITS


def tail_mask(n: int) -> np.uint32:
    """Mask of the valid bits in the last word of an ``n``-bit vector."""
    r = n % WORD_BITS
    return WORD_DTYPE(0xFFFFFFFF if r == 0 else (1 << r) - 1)


def pack_bits(bits) -> np.ndarray:
    """Pack a 0/1 array along its last axis into uint32 words."""
    bits = np.asarray(bits, dtype=np.uint8) & 1
    n = bits.shape[-1]
    nw = word_count(n)
    packed = np.packbits(bits, axis=-1, bitorder="little")
    pad = nw * 4 - packed.shape[-1]
    if pad:
        widths = [(0, 0)] * (packed.ndim - 1) + [(0, pad)]
        packed = np.pad(packed, widths)
    return np.ascontiguousarray(packed).view("<u4").astype(WORD_DTYPE, copy=False)


def unpack_bits(words: np.ndarray, n: int) -> np.ndarray:
    words = np.ascontiguousarray(words, dtype="<u4")
    bits = np.unpackbits(words.view(np.uint8), axis=-1, bitorder="little")
    return bits[..., :n]


def row_weights(words: np.ndarray) -> np.ndarray:
    """Hamming weight of every row of a 2-D word array."""
    return np.bitwise_count(words).sum(axis=-1, dtype=np.int64)


class BitVector:
    """Length-``n`` vector over F2 stored as ``ceil(n/32)`` uint32 words."""

    __slots__ = ("length", "words")

    def __init__(self, length: int, words: np.ndarray | None = None):
        if length < 0:
            raise ValueError("length must be nonnegative")
        self.length = length
        if words is None:
            self.words = np.zeros(word_count(length), dtype=WORD_DTYPE)
        else:
            words = np.array(words, dtype=WORD_DTYPE).reshape(-1)
            if words.shape[0] != word_count(length):
                raise ValueError(
                    f"expected {word_count(length)} words for length {length}, "
                    f"got {words.shape[0]}"
                )
            self.words = words
            self._clear_padding()

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVector":
        bits = np.asarray(list(bits) if not isinstance(bits, np.ndarray) else bits,
                          dtype=np.uint8)
        return cls(bits.shape[0], pack_bits(bits))

    @classmethod
    def from_string(cls, s: str) -> "BitVector":
        s = s.strip()
        if any(ch not in "01" for ch in s):
            raise ValueError(f"not a 0/1 string: {s!r}")
        return cls.from_bits([int(ch) for ch in s])

    def _clear_padding(self) -> None:
        if self.length % WORD_BITS and self.words.shape[0]:
            self.words[-1] &= tail_mask(self.length)

    def to_bits(self) -> np.ndarray:
        return unpack_bits(self.words, self.length)

    def to_int(self) -> int:
        """Integer whose bit ``i`` is coordinate ``i``."""
        return int.from_bytes(self.words.astype("<u4").tobytes(), "little")

    def copy(self) -> "BitVector":
        return BitVector(self.length, self.words.copy())

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return int(self.words[i // WORD_BITS] >> WORD_DTYPE(i % WORD_BITS)) & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        return xor_into(self.copy(), other)

    def __and__(self, other: "BitVector") -> "BitVector":
        _check_lengths(self, other)
        return BitVector(self.length, self.words & other.words)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self.length == other.length and bool(np.array_equal(self.words, other.words))

    def __hash__(self):
        return hash((self.length, self.words.tobytes()))

    def __str__(self) -> str:
        return "".join(map(str, self.to_bits()))

    def __repr__(self) -> str:
        return f"BitVector({str(self)!r})"


def _check_lengths(a: BitVector, b: BitVector) -> None:
    if a.length != b.length:
        raise ValueError(f"length mismatch: {a.length} != {b.length}")


def xor_into(dst: BitVector, src: BitVector) -> BitVector:
    """``dst ^= src`` word by word; returns ``dst``."""
    _check_lengths(dst, src)
    np.bitwise_xor(dst.words, src.words, out=dst.words)
    return dst


def weight(v: BitVector) -> int:
    return int(np.bitwise_count(v.words).sum())


class BitMatrix:
    """``rows x cols`` matrix over F2; row ``i`` is ``words[i]``."""

    __slots__ = ("cols", "words")

    def __init__(self, cols: int, words: np.ndarray):
        words = np.array(words, dtype=WORD_DTYPE, ndmin=2)
        if words.ndim != 2 or words.shape[1] != word_count(cols):
            raise ValueError(f"word array of shape {words.shape} does not fit {cols} columns")
        self.cols = cols
        self.words = words
        if cols % WORD_BITS and words.shape[1]:
            self.words[:, -1] &= tail_mask(cols)

    @classmethod
    def from_bits(cls, bits) -> "BitMatrix":
        bits = np.asarray(bits, dtype=np.uint8)
        if bits.ndim != 2:
            raise ValueError("expected a 2-D 0/1 array")
        return cls(bits.shape[1], pack_bits(bits))

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> "BitMatrix":
        return cls.from_bits([[int(ch) for ch in r] for r in rows])

    @classmethod
    def from_rows(cls, rows: Sequence[BitVector]) -> "BitMatrix":
        if not rows:
            raise ValueError("need at least one row")
        n = rows[0].length
        for r in rows:
            if r.length != n:
                raise ValueError("rows of different lengths")
        return cls(n, np.stack([r.words for r in rows]))

    @classmethod
    def identity(cls, k: int) -> "BitMatrix":
        return cls.from_bits(np.eye(k, dtype=np.uint8))

    @property
    def rows(self) -> int:
        return self.words.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.words[i].copy())

    def to_bits(self) -> np.ndarray:
        return unpack_bits(self.words, self.cols)

    def copy(self) -> "BitMatrix":
        return BitMatrix(self.cols, self.words.copy())

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.cols == other.cols and np.array_equal(self.words, other.words)

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"

    def __str__(self) -> str:
        return "\n".join("".join(map(str, r)) for r in self.to_bits())


def combine_rows(m: BitMatrix, c: Sequence[int]) -> BitVector:
    """XOR of the rows of ``m`` selected by the combination ``c``."""
    if len(c) == 0:
        raise ValueError("empty combination")
    for a, b in zip(c, c[1:]):
        if b <= a:
            raise ValueError(f"combination {tuple(c)} is not strictly increasing")
    if c[0] < 0 or c[-1] >= m.rows:
        raise IndexError(f"combination {tuple(c)} out of range for {m.rows} rows")
    out = m.row(c[0])
    for i in c[1:]:
        np.bitwise_xor(out.words, m.words[i], out=out.words)
    return out


# Dense elimination helpers.  They work on 0/1 uint8 arrays, which keeps the
# column bookkeeping readable; packing happens once at the end.

def rref(bits, pivot_cols: Sequence[int] | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F2.

    Returns the nonzero rows of the echelon form and the pivot columns.
    """
    a = (np.array(bits, dtype=np.uint8) & 1).copy()
    k, n = a.shape
    cols = range(n) if pivot_cols is None else pivot_cols
    r = 0
    pivots = []
    for c in cols:
        if r == k:
            break
        hits = np.nonzero(a[r:, c])[0]
        if hits.size == 0:
            continue
        p = r + hits[0]
        if p != r:
            a[[r, p]] = a[[p, r]]
        mask = a[:, c].astype(bool)
        mask[r] = False
        a[mask] ^= a[r]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(bits) -> int:
    if isinstance(bits, BitMatrix):
        bits = bits.to_bits()
    return len(rref(bits)[1])


def row_basis(m: BitMatrix) -> BitMatrix:
    """Full-rank generator matrix for the row space of ``m`` (may be empty)."""
    basis, _ = rref(m.to_bits())
    return BitMatrix.from_bits(basis.reshape(-1, m.cols))
