"""
Building codes from polynomials
===============================

Cyclic codes from divisors of x^m - 1, the (u | u*p + v) matrix-product
construction, and extending / puncturing.
"""

from mindist import EngineConfig, min_weight
from mindist.codeconstruct import (BinPoly, cyclic_generator_matrix, extend_code,
                                   load_fixture, matrix_product_unit, puncture_code)

# Hamming code as the cyclic code of x^3 + x + 1
f = BinPoly.from_exponents("3,1,0")
H = cyclic_generator_matrix(f, 7)
print(H, "\n")
print("Hamming d =", min_weight(H)[0])
print("extended d =", min_weight(extend_code(H))[0])

# the repetition code is generated by (x^7 - 1)/(x + 1)
rep = BinPoly.x_m_minus_1(7) // BinPoly.from_exponents("1,0")
print(rep)

# Hamming inside, repetition outside, p = x^2 + x + 1 (a unit mod x^7 - 1)
p = BinPoly.from_exponents("2,1,0")
G = matrix_product_unit(H, cyclic_generator_matrix(rep, 7), p, 7, f, rep)
print("matrix-product code", G.shape, "d =", min_weight(G, EngineConfig(s=3))[0])

# the two large codes: built and shaped, distances not computed here
for name in ("c1", "c2"):
    C = load_fixture(name).build()
    print(name, C.shape, extend_code(C).shape, puncture_code(C, [C.cols]).shape)
