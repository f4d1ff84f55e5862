import numpy as np
import pytest

from mindist.cost import cost_basic, cost_optimized, cost_saved, cost_stack
from mindist.engines import (ALGORITHMS, AdditionStack, BruteForceCapError, EngineConfig,
                             MemoryCapError, RoundStats, SavedAdditions, ZeroCodeError,
                             basic_round, brute_force_gray, build_saved_additions, bz_basic,
                             bz_optimized, bz_saved, bz_saved_unrolled, bz_stack, min_weight,
                             optimized_round, saved_round, saved_table_bytes, stack_round)
from mindist.enumeration import binomial, combinations
from mindist.f2core import BitMatrix
from mindist.gamma import best_gamma_over_permutations

from .conftest import (HAMMING_7_4, extend_bits, golay_23, oracle_distance,
                       random_full_rank_bits)

BZ = [bz_basic, bz_optimized, bz_stack, bz_saved, bz_saved_unrolled]


def words(rng, k, nw=2):
    return rng.integers(0, 2**32, (k, nw), dtype=np.uint32)


class TestBruteForce:
    def test_examples(self):
        assert brute_force_gray(BitMatrix.identity(3))[0] == 1
        assert brute_force_gray(BitMatrix.from_bits(HAMMING_7_4))[0] == 3
        assert brute_force_gray(BitMatrix.from_strings(["1101"]))[0] == 3

    def test_serial_addition_count(self):
        d, st = brute_force_gray(BitMatrix.from_bits(golay_23()))
        assert d == 7
        assert st.row_additions == 2**12 - 1 == st.combinations

    @pytest.mark.parametrize("workers", [2, 3, 5])
    def test_blocks_give_same_distance(self, workers):
        rng = np.random.default_rng(workers)
        G = random_full_rank_bits(rng, 11, 23)
        serial = brute_force_gray(BitMatrix.from_bits(G))[0]
        cfg = EngineConfig(algorithm="brute_gray", workers=workers)
        d, st = brute_force_gray(BitMatrix.from_bits(G), cfg)
        assert d == serial == oracle_distance(G)
        # each extra block pays for building its first codeword
        assert st.row_additions >= 2**11 - 1

    def test_cap(self):
        G = BitMatrix.identity(6)
        with pytest.raises(BruteForceCapError):
            brute_force_gray(G, EngineConfig(algorithm="brute_gray", brute_cap=5))


class TestRoundCounters:
    def test_small_cases(self):
        rng = np.random.default_rng(0)
        W = words(rng, 5)
        t = RoundStats(2)
        basic_round(W, 2, t)
        assert t.row_additions == 10
        t = RoundStats(3)
        stack_round(W, 3, t)
        assert t.row_additions == 16
        t = RoundStats(1)
        optimized_round(W, 1, t)
        assert (t.row_additions, t.combinations) == (0, 5)

    @pytest.mark.parametrize("k", [6, 9, 13])
    def test_lemmas(self, k):
        rng = np.random.default_rng(k)
        W = words(rng, k)
        for g in range(1, k + 1):
            for fn, c in ((basic_round, cost_basic), (optimized_round, cost_optimized),
                          (stack_round, cost_stack)):
                t = RoundStats(g)
                fn(W, g, t)
                assert t.row_additions == c(k, g), (fn.__name__, g)
                assert t.combinations == binomial(k, g)
            for s in (1, 2, 3, 4):
                for unroll in (1, 2, 3):
                    t = RoundStats(g)
                    saved_round(SavedAdditions(W, min(s, k)), g, t, unroll=unroll)
                    assert t.row_additions == cost_saved(k, g, 1, min(s, k))
                    assert t.combinations == binomial(k, g)

    def test_round_minimum_matches_direct_enumeration(self):
        rng = np.random.default_rng(7)
        k = 9
        bits = rng.integers(0, 2, (k, 40), dtype=np.uint8)
        G = BitMatrix.from_bits(bits)
        for g in range(1, 6):
            want = min(int((bits[list(c)].sum(axis=0) % 2).sum())
                       for c in combinations(k, g))
            got = [basic_round(G.words, g, RoundStats(g)),
                   optimized_round(G.words, g, RoundStats(g)),
                   stack_round(G.words, g, RoundStats(g)),
                   saved_round(SavedAdditions(G.words, 2), g, RoundStats(g)),
                   saved_round(SavedAdditions(G.words, 3), g, RoundStats(g), unroll=3),
                   saved_round(SavedAdditions(G.words, 2), g, RoundStats(g), workers=3)]
            assert got == [want] * len(got)


class TestAdditionStack:
    def test_rebuilds_from_leftmost_change(self):
        rng = np.random.default_rng(1)
        W = words(rng, 50)
        st = AdditionStack(W, 5)
        st.load((0, 1, 2, 3, 48))
        rebuilt, adds = st.load((0, 1, 2, 4, 5))
        assert (rebuilt, adds) == (2, 2)
        assert np.array_equal(st.top, W[0] ^ W[1] ^ W[2] ^ W[4] ^ W[5])

    def test_first_load_copies_bottom_entry(self):
        W = words(np.random.default_rng(2), 6)
        st = AdditionStack(W, 3)
        assert st.load((0, 2, 4)) == (3, 2)
        assert st.load((1, 2, 3)) == (3, 2)


class TestSavedAdditions:
    def test_levels(self):
        I4 = BitMatrix.identity(4)
        sa = build_saved_additions(I4, 2)
        assert np.array_equal(sa.level(1), I4.words)
        pairs = list(combinations(4, 2))
        want = [sum(1 << i for i in c) for c in pairs]
        assert sa.level(2)[:, 0].tolist() == want
        assert sa.sizes() == [4, 6]
        assert build_saved_additions(I4, 1).sizes() == [4]

    def test_level_sizes_for_k50(self):
        # counted only; the table is not built
        assert [binomial(50, l) for l in range(1, 6)] == [50, 1225, 19600, 230300, 2118760]
        assert saved_table_bytes(50, 64, 5) == sum([50, 1225, 19600, 230300, 2118760]) * 8

    def test_levels_are_lex_row_sums(self):
        rng = np.random.default_rng(3)
        W = words(rng, 8)
        sa = build_saved_additions(W, 4)
        for l in range(1, 5):
            for r, c in enumerate(combinations(8, l)):
                acc = np.zeros(2, dtype=np.uint32)
                for i in c:
                    acc ^= W[i]
                assert np.array_equal(sa.level(l)[r], acc)

    def test_memory_cap(self):
        W = words(np.random.default_rng(4), 20)
        with pytest.raises(MemoryCapError) as err:
            SavedAdditions(W, 5, memory_cap=1000)
        assert err.value.required == saved_table_bytes(20, 64, 5)


class TestEngines:
    def test_known_codes(self):
        cases = [(HAMMING_7_4, 3), (extend_bits(HAMMING_7_4), 4), (golay_23(), 7)]
        for bits, d in cases:
            for alg in ALGORITHMS:
                got, _, _ = min_weight(BitMatrix.from_bits(bits),
                                       EngineConfig(algorithm=alg, s=3))
                assert got == d, alg

    def test_random_codes_agree(self):
        rng = np.random.default_rng(11)
        for _ in range(15):
            k = int(rng.integers(3, 11))
            n = int(rng.integers(k + 1, 26))
            G = random_full_rank_bits(rng, k, n)
            want = oracle_distance(G)
            gs = best_gamma_over_permutations(BitMatrix.from_bits(G), 10, 0)
            for eng in BZ:
                for s in (2, 3):
                    assert eng(gs, None, EngineConfig(s=s))[0] == want

    def test_singleton_one_needs_no_rounds(self):
        d, st, _ = min_weight(BitMatrix.identity(4), EngineConfig(algorithm="basic"))
        assert d == 1 and st.per_g == []

    def test_bounds_move_monotonically(self):
        rng = np.random.default_rng(12)
        G = random_full_rank_bits(rng, 12, 40)
        _, st, summary = min_weight(BitMatrix.from_bits(G), EngineConfig(algorithm="stack"))
        assert summary["m"] >= 2
        lows = [r.lower for r in st.per_g]
        ups = [r.upper for r in st.per_g]
        assert all(a < b for a, b in zip(lows, lows[1:]))
        assert all(a >= b for a, b in zip(ups, ups[1:]))
        assert st.g_final <= 12
        assert st.combinations <= sum(summary["m"] * binomial(12, r.g) for r in st.per_g)

    def test_unrolled_same_additions_fewer_accesses(self):
        rng = np.random.default_rng(13)
        G = random_full_rank_bits(rng, 36, 60)
        gs = best_gamma_over_permutations(BitMatrix.from_bits(G), 10, 0)
        d1, a = bz_saved(gs, None, EngineConfig(s=3))
        d2, b = bz_saved_unrolled(gs, None, EngineConfig(s=3, unroll=2))
        d3, c = bz_saved_unrolled(gs, None, EngineConfig(s=3, unroll=3))
        assert d1 == d2 == d3
        assert a.row_additions == b.row_additions == c.row_additions
        assert a.g_final >= 4
        assert c.row_accesses <= b.row_accesses < a.row_accesses

    def test_rank_deficient_input_reduced(self):
        bits = np.vstack([HAMMING_7_4, HAMMING_7_4[0] ^ HAMMING_7_4[1]])
        d, _, summary = min_weight(BitMatrix.from_bits(bits), EngineConfig(algorithm="saved"))
        assert d == 3 and summary["k"] == 4 and summary["input_rows"] == 5

    def test_zero_code(self):
        with pytest.raises(ZeroCodeError):
            min_weight(BitMatrix.from_strings(["0000", "0000"]))

    def test_determinism(self):
        rng = np.random.default_rng(14)
        G = BitMatrix.from_bits(random_full_rank_bits(rng, 14, 30))
        runs = [min_weight(G, EngineConfig(algorithm="saved", s=3, seed=5, workers=w))
                for w in (1, 1, 3)]
        assert runs[0][0] == runs[1][0] == runs[2][0]
        assert runs[0][1] == runs[1][1] == runs[2][1]

    def test_large_shape_accepted(self):
        # [150,50] shape with a planted weight-2 word so the run stays short
        rng = np.random.default_rng(15)
        bits = random_full_rank_bits(rng, 50, 150)
        bits[0] = 0
        bits[0, [3, 97]] = 1
        G = BitMatrix.from_bits(bits)
        d, st, summary = min_weight(G, EngineConfig(algorithm="saved", s=2,
                                                    permutation_trials=2))
        assert summary["k"] == 50 and summary["n"] == 150
        assert d <= 2 and st.g_final <= 2

    def test_config_validation(self):
        with pytest.raises(ValueError):
            EngineConfig(algorithm="fast")
        with pytest.raises(ValueError):
            EngineConfig(s=9)
        with pytest.raises(ValueError):
            EngineConfig(unroll=4)
        assert EngineConfig(algorithm="brute").algorithm == "brute_gray"
