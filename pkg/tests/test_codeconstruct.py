import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mindist.codeconstruct import (BinPoly, ConstructionError, circulant,
                                   cyclic_generator_matrix, extend_code, fixture_names, is_unit,
                                   load_fixture, matrix_product_unit, parse_fixture, poly_gcd,
                                   puncture_code)
from mindist.f2core import BitMatrix, rank

from .conftest import HAMMING_7_4, extend_bits, oracle_distance, oracle_rank

polys = st.integers(1, 2**40).map(BinPoly)
HAM = BinPoly.from_exponents("3,1,0")


@given(polys, polys)
def test_division_identity(a, b):
    q, r = divmod(a, b)
    assert (q * b + r) == a
    assert not r or r.degree < b.degree


@given(polys, st.integers(2, 40))
def test_cyclic_reduction(a, m):
    r = a.mod_cyclic(m)
    assert r.degree < m
    assert (a + r) % BinPoly.x_m_minus_1(m) == BinPoly(0)


def test_poly_basics():
    p = BinPoly.from_exponents([5, 2, 0])
    assert p.degree == 5 and p.exponents() == [5, 2, 0]
    assert str(BinPoly.from_exponents("2,1,0")) == "x^2 + x + 1"
    assert poly_gcd(BinPoly.from_exponents("2,0"), BinPoly.from_exponents("1,0")).bits == 0b11
    assert is_unit(BinPoly(1), 7) and not is_unit(BinPoly.from_exponents("1,0"), 7)
    with pytest.raises(ValueError):
        BinPoly.from_exponents([-1])


def test_cyclic_examples():
    G = cyclic_generator_matrix(BinPoly.from_exponents("1,0"), 3)
    assert str(G) == "110\n011"
    assert oracle_distance(G.to_bits()) == 2
    full = cyclic_generator_matrix(BinPoly(1), 6)
    assert full.shape == (6, 6) and oracle_distance(full.to_bits()) == 1
    cof = BinPoly.x_m_minus_1(7) // HAM
    G = cyclic_generator_matrix(cof, 7)
    assert G.shape == (3, 7) and oracle_distance(G.to_bits()) == 4
    G = cyclic_generator_matrix(HAM, 7)
    assert G.shape == (4, 7) and oracle_distance(G.to_bits()) == 3


def test_cyclic_errors():
    with pytest.raises(ConstructionError):
        cyclic_generator_matrix(BinPoly.from_exponents("2,0"), 7)
    with pytest.raises(ConstructionError):
        cyclic_generator_matrix(BinPoly.x_m_minus_1(5), 5)


def test_cyclic_full_rank():
    for m in range(2, 16):
        xm = BinPoly.x_m_minus_1(m)
        for bits in range(1, 1 << (m + 1)):
            f = BinPoly(bits)
            if f.degree < m and f.divides(xm):
                G = cyclic_generator_matrix(f, m)
                assert oracle_rank(G.to_bits()) == G.rows == m - f.degree


def test_circulant_rows_are_shifts():
    p = BinPoly.from_exponents("4,1")
    P = circulant(p, 5)
    for i in range(5):
        assert P[i].tolist() == p.shift_cyclic(i, 5).coefficients(5).tolist()


def test_repetition_construction():
    # C2 = {0} is modelled by p = 1 and the repetition of a code with itself
    G1 = cyclic_generator_matrix(HAM, 7)
    bits = G1.to_bits()
    twice = np.hstack([bits, bits])
    assert oracle_distance(twice) == 2 * oracle_distance(bits)


def test_small_matrix_product():
    G1 = cyclic_generator_matrix(HAM, 7)
    rep = BinPoly.x_m_minus_1(7) // BinPoly.from_exponents("1,0")
    G2 = cyclic_generator_matrix(rep, 7)
    G = matrix_product_unit(G1, G2, BinPoly(1), 7, HAM, rep)
    assert G.shape == (5, 14) and rank(G) == 5
    # (u | u + v) with d1 = 3 and the [7,1,7] repetition code: min(2 * 3, 7)
    assert oracle_distance(G.to_bits()) == 6
    # codewords have the form (c1, c1 + c2)
    top = G.to_bits()[:4]
    assert np.array_equal(top[:, :7], top[:, 7:])


def test_matrix_product_errors():
    G1 = cyclic_generator_matrix(HAM, 7)
    cof = BinPoly.x_m_minus_1(7) // HAM
    G2 = cyclic_generator_matrix(cof, 7)
    with pytest.raises(ConstructionError, match="unit"):
        matrix_product_unit(G1, G1, BinPoly.from_exponents("1,0"), 7)
    with pytest.raises(ConstructionError, match="contained"):
        matrix_product_unit(G1, G2, BinPoly(1), 7, HAM, cof)
    with pytest.raises(ConstructionError, match="contained"):
        matrix_product_unit(G1, G2, BinPoly(1), 7)
    G = matrix_product_unit(G1, G2, BinPoly(1), 7, HAM, cof, require_nested=False)
    assert G.shape == (7, 14)


def test_extend_and_puncture():
    H = BitMatrix.from_bits(HAMMING_7_4)
    E = extend_code(H)
    assert E.shape == (4, 8) and oracle_distance(E.to_bits()) == 4
    assert np.array_equal(E.to_bits(), extend_bits(HAMMING_7_4))
    even = BitMatrix.from_strings(["1100", "0110"])
    assert not extend_code(even).to_bits()[:, -1].any()
    P = puncture_code(E, [8])
    assert P.shape == (4, 7) and oracle_distance(P.to_bits()) == 3
    rep = BitMatrix.from_strings(["11111"])
    R = puncture_code(rep, [2])
    assert R.shape == (1, 4) and oracle_distance(R.to_bits()) == 4
    with pytest.raises(ConstructionError):
        puncture_code(rep, [0])
    with pytest.raises(ConstructionError):
        puncture_code(rep, [1, 2, 3, 4, 5])


def test_extend_and_puncture_distance_changes():
    rng = np.random.default_rng(0)
    for _ in range(20):
        k, n = int(rng.integers(2, 8)), int(rng.integers(9, 16))
        bits = rng.integers(0, 2, (k, n), dtype=np.uint8)
        if oracle_rank(bits) < k:
            continue
        d = oracle_distance(bits)
        G = BitMatrix.from_bits(bits)
        assert oracle_distance(extend_code(G).to_bits()) >= d
        for pos in (1, n):
            P = puncture_code(G, [pos])
            if P.rows == k:
                assert oracle_distance(P.to_bits()) >= d - 1


def test_fixtures():
    assert fixture_names() == ["c1", "c2"]
    c1, c2 = load_fixture("c1"), load_fixture("c2")
    assert (c1.f1.degree, c1.f2.degree, c2.f2.degree) == (67, 116, 115)
    assert not c1.nested and c2.nested
    assert not c1.f1.divides(c1.f2) and c2.f1.divides(c2.f2)
    assert is_unit(c1.p, 117) and is_unit(c2.p, 117)
    G1 = c1.build()
    assert G1.shape == (51, 234) and rank(G1) == 51
    assert c2.build().shape == (52, 234)
    with pytest.raises(ConstructionError):
        load_fixture("c9")


def test_fixture_checksum_catches_typos():
    text = "m 7\nf1 3,1,0\nf2_cofactor 1,0\np 0\nexpect 14 6\n"
    with pytest.raises(ConstructionError, match="expected"):
        parse_fixture(text).build()
    ok = parse_fixture(text.replace("14 6", "14 5"))
    assert ok.build().shape == (5, 14)
    with pytest.raises(ConstructionError):
        parse_fixture("m 7\n")
