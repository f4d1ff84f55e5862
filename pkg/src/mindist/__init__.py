"""Minimum distance of binary linear codes."""

from .codeconstruct import (BinPoly, cyclic_generator_matrix, extend_code, load_fixture,
                            matrix_product_unit, puncture_code)
from .cost import cost_basic, cost_brute, cost_optimized, cost_saved, cost_stack, cost_table
from .engines import (EngineConfig, WorkStats, brute_force_gray, build_saved_additions,
                      bz_basic, bz_optimized, bz_saved, bz_saved_unrolled, bz_stack, min_weight)
from .f2core import BitMatrix, BitVector, combine_rows, weight, xor_into
from .gamma import (Bounds, GammaSet, best_gamma_over_permutations, compute_gamma_matrices,
                    lower_bound, singleton_upper)
from .parallel import ScheduleConfig

__version__ = "0.1.0"

__all__ = [
    "BinPoly", "BitMatrix", "BitVector", "Bounds", "EngineConfig", "GammaSet",
    "ScheduleConfig", "WorkStats", "best_gamma_over_permutations", "brute_force_gray",
    "build_saved_additions", "bz_basic", "bz_optimized", "bz_saved", "bz_saved_unrolled",
    "bz_stack", "combine_rows", "compute_gamma_matrices", "cost_basic", "cost_brute",
    "cost_optimized", "cost_saved", "cost_stack", "cost_table", "cyclic_generator_matrix",
    "extend_code", "load_fixture", "lower_bound", "matrix_product_unit", "min_weight",
    "puncture_code", "singleton_upper", "weight", "xor_into",
]
