"""Test-code constructions: cyclic codes, matrix-product codes, extend, puncture.

Polynomials over F2 are plain Python ints used as coefficient bitsets, bit
``i`` being the coefficient of ``x^i``.  The matrix-product code of
``C1 = (f1)`` and ``C2 = (f2)`` with a unit ``p`` consists of the words
``(c1, c1*p + c2)``; its generator is ``[G1 | G1*P ; 0 | G2]`` with ``P`` the
circulant of ``p`` modulo ``x^m - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

import numpy as np

from .f2core import BitMatrix, rank, rref


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class BinPoly:
    bits: int

    @classmethod
    def from_exponents(cls, exps) -> "BinPoly":
        if isinstance(exps, str):
            exps = [int(e) for e in exps.replace(" ", "").split(",") if e]
        bits = 0
        for e in exps:
            if e < 0:
                raise ValueError(f"negative exponent {e}")
            bits ^= 1 << e
        return cls(bits)

    @classmethod
    def x_m_minus_1(cls, m: int) -> "BinPoly":
        return cls((1 << m) | 1)

    @property
    def degree(self) -> int:
        return self.bits.bit_length() - 1

    def exponents(self) -> list[int]:
        return [i for i in range(self.degree, -1, -1) if self.bits >> i & 1]

    def __bool__(self) -> bool:
        return self.bits != 0

    def __add__(self, other: "BinPoly") -> "BinPoly":
        return BinPoly(self.bits ^ other.bits)

    def __mul__(self, other: "BinPoly") -> "BinPoly":
        a, b, out = self.bits, other.bits, 0
        while b:
            if b & 1:
                out ^= a
            a <<= 1
            b >>= 1
        return BinPoly(out)

    def __divmod__(self, other: "BinPoly") -> tuple["BinPoly", "BinPoly"]:
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        r = self.bits
        q = 0
        dd = other.degree
        while r and r.bit_length() - 1 >= dd:
            shift = r.bit_length() - 1 - dd
            q ^= 1 << shift
            r ^= other.bits << shift
        return BinPoly(q), BinPoly(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "BinPoly") -> bool:
        return not (other % self)

    def mod_cyclic(self, m: int) -> "BinPoly":
        """Reduce modulo ``x^m - 1`` by folding exponents."""
        out = 0
        bits = self.bits
        mask = (1 << m) - 1
        while bits:
            out ^= bits & mask
            bits >>= m
        return BinPoly(out)

    def shift_cyclic(self, i: int, m: int) -> "BinPoly":
        b = self.mod_cyclic(m).bits
        i %= m
        return BinPoly(((b << i) | (b >> (m - i))) & ((1 << m) - 1))

    def coefficients(self, m: int) -> np.ndarray:
        return np.array([self.bits >> i & 1 for i in range(m)], dtype=np.uint8)

    def __str__(self) -> str:
        terms = []
        for e in self.exponents():
            terms.append("1" if e == 0 else "x" if e == 1 else f"x^{e}")
        return " + ".join(terms) or "0"


def poly_gcd(a: BinPoly, b: BinPoly) -> BinPoly:
    while b:
        a, b = b, a % b
    return a


def is_unit(p: BinPoly, m: int) -> bool:
    return poly_gcd(p.mod_cyclic(m), BinPoly.x_m_minus_1(m)).bits == 1


def cyclic_generator_matrix(f: BinPoly, m: int) -> BitMatrix:
    """Rows ``x^i f`` for ``i = 0 .. m - deg f - 1``."""
    if not f:
        raise ConstructionError("generator polynomial is zero")
    if not f.divides(BinPoly.x_m_minus_1(m)):
        raise ConstructionError(f"{f} does not divide x^{m} - 1")
    k = m - f.degree
    if k == 0:
        raise ConstructionError(f"{f} generates the zero code")
    base = f.coefficients(m)
    return BitMatrix.from_bits(np.stack([np.roll(base, i) for i in range(k)]))


def circulant(p: BinPoly, m: int) -> np.ndarray:
    base = p.mod_cyclic(m).coefficients(m)
    return np.stack([np.roll(base, i) for i in range(m)])


def matrix_product_unit(G1: BitMatrix, G2: BitMatrix, p: BinPoly, m: int,
                        f1: BinPoly | None = None, f2: BinPoly | None = None,
                        require_nested: bool = True) -> BitMatrix:
    """Generator of ``{(c1, c1*p + c2)}`` for ``c1 in C1``, ``c2 in C2``.

    Nesting ``C2 <= C1`` is checked as ``f1 | f2`` when the polynomials are
    given and by a rank test otherwise; ``require_nested=False`` skips it.
    """
    if G1.cols != m or G2.cols != m:
        raise ConstructionError(f"both codes must have length {m}")
    if not is_unit(p, m):
        raise ConstructionError(f"p is not a unit modulo x^{m} - 1")
    a, b = G1.to_bits(), G2.to_bits()
    if require_nested:
        if f1 is not None and f2 is not None:
            nested = f1.divides(f2)
        else:
            nested = rank(np.vstack([a, b])) == rank(a)
        if not nested:
            raise ConstructionError("C2 is not contained in C1")
    P = circulant(p, m).astype(np.int64)
    top = np.hstack([a, (a.astype(np.int64) @ P % 2).astype(np.uint8)])
    bottom = np.hstack([np.zeros_like(b), b])
    return BitMatrix.from_bits(np.vstack([top, bottom]))


def extend_code(G: BitMatrix) -> BitMatrix:
    """Append an overall parity column."""
    bits = G.to_bits()
    parity = bits.sum(axis=1, dtype=np.int64) % 2
    return BitMatrix.from_bits(np.hstack([bits, parity[:, None].astype(np.uint8)]))


def puncture_code(G: BitMatrix, positions) -> BitMatrix:
    """Delete the given 1-based columns and return a basis of what is left."""
    pos = sorted({int(p) for p in positions})
    if not pos:
        return G.copy()
    if pos[0] < 1 or pos[-1] > G.cols:
        raise ConstructionError(f"positions must lie in 1..{G.cols}")
    if len(pos) >= G.cols:
        raise ConstructionError("cannot delete every column")
    keep = np.setdiff1d(np.arange(G.cols), np.array(pos) - 1)
    basis, _ = rref(G.to_bits()[:, keep])
    if basis.shape[0] == 0:
        raise ConstructionError("punctured code is zero")
    return BitMatrix.from_bits(basis)


@dataclass
class Fixture:
    name: str
    m: int
    f1: BinPoly
    f2: BinPoly
    p: BinPoly
    nested: bool
    expect: tuple[int, int] | None

    def build(self) -> BitMatrix:
        G1 = cyclic_generator_matrix(self.f1, self.m)
        G2 = cyclic_generator_matrix(self.f2, self.m)
        G = matrix_product_unit(G1, G2, self.p, self.m, self.f1, self.f2,
                                require_nested=self.nested)
        if self.expect is not None and G.shape[::-1] != self.expect:
            raise ConstructionError(
                f"fixture {self.name}: built [{G.cols},{G.rows}], expected "
                f"[{self.expect[0]},{self.expect[1]}]; check the exponent lists")
        return G


def parse_fixture(text: str, name: str = "fixture") -> Fixture:
    """Key/value lines: ``m``, ``f1``, ``f2`` or ``f2_cofactor``, ``p``, ``nested``, ``expect``."""
    vals: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, val = line.partition(" ")
        if not val:
            raise ConstructionError(f"{name}:{lineno}: expected 'key value'")
        vals[key] = val.strip()
    try:
        m = int(vals["m"])
        f1 = BinPoly.from_exponents(vals["f1"])
        p = BinPoly.from_exponents(vals["p"]).mod_cyclic(m)
    except KeyError as exc:
        raise ConstructionError(f"{name}: missing key {exc.args[0]!r}") from None
    if "f2" in vals:
        f2 = BinPoly.from_exponents(vals["f2"])
    elif "f2_cofactor" in vals:
        q, r = divmod(BinPoly.x_m_minus_1(m), BinPoly.from_exponents(vals["f2_cofactor"]))
        if r:
            raise ConstructionError(f"{name}: f2_cofactor does not divide x^{m} - 1")
        f2 = q
    else:
        raise ConstructionError(f"{name}: need f2 or f2_cofactor")
    nested = vals.get("nested", "yes").lower() in ("yes", "true", "1")
    expect = None
    if "expect" in vals:
        n_, k_ = vals["expect"].split()
        expect = (int(n_), int(k_))
    return Fixture(name, m, f1, f2, p, nested, expect)


def fixture_names() -> list[str]:
    root = resources.files("mindist") / "fixtures"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".txt"))


def load_fixture(name: str) -> Fixture:
    path = resources.files("mindist") / "fixtures" / f"{name}.txt"
    if not path.is_file():
        raise ConstructionError(f"unknown fixture {name!r}; available: {fixture_names()}")
    return parse_fixture(path.read_text(), name)
