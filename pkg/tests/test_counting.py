import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from degchrom.counting import (
    BudgetExceededError,
    ConstraintParams,
    brute_force_count,
    count_av,
    count_av_enumerated,
    count_pairwise_intersection,
    degree_chromatic_polynomial,
    friend_count,
    max_friend_histogram,
    tree_dp_count,
)
from degchrom.graph import Graph, GraphError, NotATreeError, all_labeled_trees, random_tree
from degchrom.polyalg import BigPolynomial, evaluate, interpolate_consecutive

from conftest import naive_count, path, star

K = BigPolynomial.monomial(1)


def small_graphs(max_n=5):
    """Every graph on up to ``max_n`` vertices (labeled, 1 + 2 + 8 + 64 + 1024)."""
    for n in range(0, max_n + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            yield Graph(n, tuple(p for i, p in enumerate(pairs) if mask >> i & 1))


class TestParams:
    def test_rejects_bad_m(self):
        with pytest.raises(ValueError):
            ConstraintParams(0, 3)
        with pytest.raises(ValueError):
            ConstraintParams(1, -1)
        with pytest.raises(TypeError):
            ConstraintParams(1.5, 2)

    def test_m_at_least_n_allowed(self):
        assert ConstraintParams(10, 2).m == 10


class TestFriendCount:
    def test_examples(self, p4, k13):
        assert friend_count(p4, [0, 0, 0, 0], 1) == 2
        assert all(friend_count(p4, [0, 1, 0, 1], v) == 0 for v in range(4))
        assert friend_count(k13, [0, 0, 0, 1], 0) == 2

    def test_bad_length(self, p4):
        with pytest.raises(ValueError):
            friend_count(p4, [0, 0], 0)


class TestBruteForce:
    def test_p4(self, p4):
        # independently: naive enumeration of the 16 colorings
        assert naive_count(p4, 2, 2) == 10
        assert brute_force_count(p4, ConstraintParams(2, 2)).value == 10

    def test_p4_samples(self, p4):
        frozen = [0, 0, 10, 66, 228]
        assert [naive_count(p4, 2, k) for k in range(5)] == frozen
        assert [brute_force_count(p4, ConstraintParams(2, k)).value for k in range(5)] == frozen

    def test_matches_naive_on_all_small_graphs(self):
        for g in small_graphs(4):
            for k in range(0, 4):
                hist = max_friend_histogram(g, k)
                for m in range(1, 5):
                    assert sum(hist[:m]) == naive_count(g, m, k), (g, m, k)

    def test_saturation_and_single_color(self, k13):
        for k in range(5):
            assert brute_force_count(k13, ConstraintParams(4, k)).value == k**4
        assert brute_force_count(k13, ConstraintParams(3, 1)).value == 0
        assert brute_force_count(k13, ConstraintParams(4, 1)).value == 1

    def test_empty_graph(self):
        assert brute_force_count(Graph(0), ConstraintParams(1, 0)).value == 1
        assert brute_force_count(Graph(0), ConstraintParams(1, 5)).value == 1

    def test_budget(self):
        g = path(31)
        with pytest.raises(BudgetExceededError):
            brute_force_count(g, ConstraintParams(2, 2))
        with pytest.raises(BudgetExceededError):
            brute_force_count(path(3), ConstraintParams(2, 3), budget=26)
        assert brute_force_count(path(3), ConstraintParams(2, 3), budget=27).value == 27 - 3

    def test_worker_count_irrelevant(self, monkeypatch):
        import degchrom.counting as counting
        monkeypatch.setattr(counting, "_BLOCK", 97)
        counting._max_friend_histogram.cache_clear()
        counting._coloring_block.cache_clear()
        t = random_tree(7, 3)
        single = max_friend_histogram(t, 4, workers=1)
        assert single == max_friend_histogram(t, 4, workers=3)
        counting._max_friend_histogram.cache_clear()
        counting._coloring_block.cache_clear()
        monkeypatch.undo()
        assert single == max_friend_histogram(t, 4)

    def test_color_relabeling_invariance(self):
        rng = random.Random(11)
        for _ in range(10):
            t = random_tree(rng.randint(2, 6), rng.randrange(2**32))
            k = rng.randint(1, 4)
            m = rng.randint(1, 3)
            perm = list(range(k))
            rng.shuffle(perm)
            colorings = list(itertools.product(range(k), repeat=t.n))
            rng.shuffle(colorings)
            total = 0
            for col in colorings:
                col = [perm[c] for c in col]
                if all(friend_count(t, col, v) < m for v in range(t.n)):
                    total += 1
            assert total == brute_force_count(t, ConstraintParams(m, k)).value


class TestTreeDP:
    def test_examples(self, p4, k13):
        assert tree_dp_count(p4, ConstraintParams(2, 2)).value == 10
        assert tree_dp_count(k13, ConstraintParams(2, 2)).value == 8

    def test_hand_trace_p4(self, p4):
        # rooted at 0: k * (k^3 - 2k + 1)
        for k in range(8):
            assert tree_dp_count(p4, ConstraintParams(2, k)).value == k * (k**3 - 2 * k + 1)

    def test_star_closed_form(self, k13):
        for k in range(8):
            assert tree_dp_count(k13, ConstraintParams(2, k)).value == k * (k - 1) ** 2 * (k + 2)

    def test_m1_is_chromatic(self):
        for seed in range(20):
            t = random_tree(2 + seed % 9, seed)
            for k in range(6):
                assert tree_dp_count(t, ConstraintParams(1, k)).value == k * (k - 1) ** (t.n - 1)

    def test_single_vertex(self):
        t = next(iter(all_labeled_trees(1)))
        assert tree_dp_count(t, ConstraintParams(1, 4)).value == 4

    def test_requires_tree(self):
        with pytest.raises(NotATreeError):
            tree_dp_count(Graph(3, ((0, 1), (1, 2), (0, 2))), ConstraintParams(2, 2))

    @pytest.mark.parametrize("n", range(2, 6))
    def test_matches_oracle_exhaustive(self, n):
        for t in all_labeled_trees(n):
            for k in range(0, n + 2):
                hist = max_friend_histogram(t, k)
                for m in range(1, n + 1):
                    assert tree_dp_count(t, ConstraintParams(m, k)).value == sum(hist[:m])

    def test_root_invariance(self):
        for seed in range(10):
            t = random_tree(12, seed)
            for m in (1, 2, 3):
                params = ConstraintParams(m, 4)
                vals = {tree_dp_count(t, params, root=r).value for r in range(t.n)}
                assert len(vals) == 1

    @settings(max_examples=30, deadline=None)
    @given(st.integers(2, 40), st.integers(0, 2**32), st.integers(0, 9))
    def test_monotone_in_m_and_bounded(self, n, seed, k):
        t = random_tree(n, seed)
        counts = [tree_dp_count(t, ConstraintParams(m, k)).value for m in range(1, n + 2)]
        assert counts == sorted(counts)
        assert counts[-1] == k**n
        assert all(c <= k**n for c in counts)
        for m in range(t.max_degree + 1, n + 2):
            assert counts[m - 1] == k**n

    @settings(max_examples=30, deadline=None)
    @given(st.integers(1, 40), st.integers(0, 2**32), st.integers(1, 8))
    def test_zero_and_one_color(self, n, seed, m):
        t = random_tree(n, seed) if n >= 2 else next(iter(all_labeled_trees(1)))
        assert tree_dp_count(t, ConstraintParams(m, 0)).value == 0
        assert tree_dp_count(t, ConstraintParams(m, 1)).value == (1 if t.max_degree < m else 0)


class TestPolynomial:
    def test_p4_m2(self, p4):
        expected = BigPolynomial([0, 1, -2, 0, 1])
        assert degree_chromatic_polynomial(p4, 2, "oracle") == expected
        assert degree_chromatic_polynomial(p4, 2, "tree-dp") == expected
        assert degree_chromatic_polynomial(p4.graph, 2) == expected

    def test_k13_m2(self, k13):
        assert degree_chromatic_polynomial(k13, 2) == K * (K - 1) ** 2 * (K + 2)
        assert degree_chromatic_polynomial(k13, 2) == BigPolynomial([0, 2, -3, 0, 1])

    def test_p4_m1(self, p4):
        assert degree_chromatic_polynomial(p4, 1) == BigPolynomial([0, -1, 3, -3, 1])

    def test_forced_tree_dp_on_cycle(self):
        with pytest.raises(NotATreeError):
            degree_chromatic_polynomial(Graph(3, ((0, 1), (1, 2), (0, 2))), 2, "tree-dp")

    def test_oracle_budget(self):
        with pytest.raises(BudgetExceededError):
            degree_chromatic_polynomial(Graph(14), 1, "oracle")

    def test_unknown_method(self, p4):
        with pytest.raises(ValueError):
            degree_chromatic_polynomial(p4, 2, "magic")

    def test_non_tree_uses_oracle(self):
        c4 = Graph(4, ((0, 1), (1, 2), (2, 3), (0, 3)))
        # m=1: chromatic polynomial of C4 is (k-1)^4 + (k-1)
        assert degree_chromatic_polynomial(c4, 1) == (K - 1) ** 4 + (K - 1)

    def test_consistent_beyond_nodes_on_all_small_graphs(self):
        # n+1 nodes are interpolated; k = n+1, n+2 are genuine checks
        for g in small_graphs(4):
            for m in range(1, max(g.n, 1) + 1):
                p = degree_chromatic_polynomial(g, m, "oracle")
                assert p.degree == g.n and p[g.n] == 1
                for k in range(0, g.n + 3):
                    assert evaluate(p, k) == brute_force_count(g, ConstraintParams(m, k)).value
                if g.n >= 1:
                    assert p[0] == 0


class TestFriendSets:
    def test_av_examples(self, k13):
        params = ConstraintParams(2, 2)
        assert count_av(k13, 0, params).value == 8
        assert count_av_enumerated(k13, 0, params).value == 8
        assert count_av(k13, 0, ConstraintParams(2, 2)).value == 3 * 2**2 - 2 * 2
        for leaf in (1, 2, 3):
            for k in range(5):
                assert count_av(k13, leaf, ConstraintParams(2, k)).value == 0

    def test_av_closed_form_vs_naive(self):
        for t in all_labeled_trees(5):
            for v in range(5):
                for m in (1, 2, 3):
                    for k in range(4):
                        naive = sum(
                            1 for col in itertools.product(range(k), repeat=5)
                            if friend_count(t, col, v) >= m
                        )
                        assert count_av(t, v, ConstraintParams(m, k)).value == naive

    def test_av_leading_term(self):
        t = random_tree(9, 5)
        for v in range(t.n):
            d = t.degree(v)
            for m in range(1, d + 1):
                # degree n-m, leading coefficient C(d, m), checked at large k
                vals = [count_av(t, v, ConstraintParams(m, k)).value for k in range(t.n + 1)]
                p = interpolate_consecutive(vals)
                assert p.degree == t.n - m
                assert p[t.n - m] == math.comb(d, m)

    def test_pairwise_examples(self, p4, p5):
        for k in range(5):
            assert count_pairwise_intersection(p4, 0, 3, ConstraintParams(2, k)).value == 0
        assert count_pairwise_intersection(p5, 1, 3, ConstraintParams(2, 3)).value == 3
        assert count_pairwise_intersection(p4, 1, 2, ConstraintParams(2, 2)).value == 2

    def test_pairwise_vs_naive(self):
        for t in all_labeled_trees(4):
            for m in (1, 2):
                for k in range(4):
                    for v1, v2 in itertools.permutations(range(4), 2):
                        naive = sum(
                            1 for col in itertools.product(range(k), repeat=4)
                            if friend_count(t, col, v1) >= m and friend_count(t, col, v2) >= m
                        )
                        got = count_pairwise_intersection(t, v1, v2, ConstraintParams(m, k))
                        assert got.value == naive

    def test_pairwise_errors(self, p4):
        with pytest.raises(ValueError):
            count_pairwise_intersection(p4, 1, 1, ConstraintParams(2, 2))
        with pytest.raises(BudgetExceededError):
            count_pairwise_intersection(path(20), 1, 2, ConstraintParams(2, 3))

    def test_av_out_of_range(self, p4):
        with pytest.raises(GraphError):
            count_av(p4, 9, ConstraintParams(2, 2))

