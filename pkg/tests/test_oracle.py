import pytest

import oracles
from conftest import path, star
from ksec import bounds
from ksec.errors import MOutOfRange, TooLarge, WidthTooLarge
from ksec.graph import Graph, max_degree, relative_diameter
from ksec.instances import (
    Xorshift64Star,
    adversarial_ternary_path,
    random_partial_ktree,
    random_tree_maxdeg,
)
from ksec.oracle import (
    balanced_sizes,
    brute_min_ksection,
    dp_min_size_cut_td,
    dp_min_size_cut_tree,
)
from ksec.treedec import TreeDecomposition, tree_to_width1_td


def test_balanced_sizes():
    assert balanced_sizes(10, 3) == [4, 3, 3]
    assert balanced_sizes(9, 3) == [3, 3, 3]
    assert balanced_sizes(2, 3) == [1, 1, 0]


def test_brute_min_ksection_examples():
    assert brute_min_ksection(path(9), 3)[1] == 2
    assert brute_min_ksection(star(6), 2)[1] == 3
    with pytest.raises(TooLarge):
        brute_min_ksection(path(15), 2)


def test_brute_min_ksection_adversarial_unique_bisection():
    g = adversarial_ternary_path(1)  # ternary part 1..4, path part 5..8
    sec, width = brute_min_ksection(g, 2)
    assert width == 1
    assert frozenset({5, 6, 7, 8}) in {frozenset(p) for p in sec.parts}


def test_brute_matches_independent_enumeration():
    rng = Xorshift64Star(123)
    for _ in range(25):
        g = random_tree_maxdeg(rng.randint(2, 9), 4, rng)
        for k in (2, 3):
            assert brute_min_ksection(g, k)[1] == oracles.min_ksection_width(g, k)


def test_brute_min_ksection_lower_bound_on_connected():
    rng = Xorshift64Star(321)
    for _ in range(20):
        g = random_tree_maxdeg(rng.randint(2, 10), 5, rng)
        for k in range(2, min(5, g.n) + 1):
            width = brute_min_ksection(g, k)[1]
            assert width >= k - 1
    assert brute_min_ksection(path(8), 4)[1] == 3  # equality on paths


def test_dp_tree_examples():
    g = path(9)
    for m in range(1, 9):
        assert dp_min_size_cut_tree(g, m)[1] == 1
    assert dp_min_size_cut_tree(g, 9)[1] == 0
    assert dp_min_size_cut_tree(g, 0)[1] == 0
    assert dp_min_size_cut_tree(star(7), 3)[1] == 3
    with pytest.raises(MOutOfRange):
        dp_min_size_cut_tree(g, 10)


def test_dp_tree_on_forests():
    g = Graph(7, [(1, 2), (2, 3), (5, 6), (6, 7)])
    for m in range(8):
        cut, w = dp_min_size_cut_tree(g, m)
        assert len(cut.black) == m
        assert w == oracles.min_cut_over_subsets(g, m)


def test_dp_tree_matches_subset_enumeration():
    rng = Xorshift64Star(999)
    for _ in range(30):
        g = random_tree_maxdeg(rng.randint(2, 10), 5, rng)
        for m in range(g.n + 1):
            cut, w = dp_min_size_cut_tree(g, m)
            assert len(cut.black) == m
            assert w == oracles.min_cut_over_subsets(g, m)


def test_dp_tree_meets_existence_bound():
    rng = Xorshift64Star(1000003)
    for _ in range(1000):
        g = oracles.random_forest(rng, n_lo=2, n_hi=40)
        d = relative_diameter(g)
        delta = max_degree(g)
        m = rng.randint(1, g.n)
        _, w = dp_min_size_cut_tree(g, m)
        assert w <= bounds.size_cut_bound(d, delta) if delta else w == 0
        if delta:
            assert bounds.size_cut_bound_improved_holds(w, d, delta)


def test_dp_td_path_decomposition():
    g = path(8)
    td = TreeDecomposition([{i, i + 1} for i in range(1, 8)], [(i, i + 1) for i in range(1, 7)])
    for m in range(1, 8):
        assert dp_min_size_cut_td(g, td, m)[1] == 1


def test_dp_td_agrees_with_tree_dp():
    rng = Xorshift64Star(246)
    for _ in range(25):
        g = random_tree_maxdeg(rng.randint(2, 16), 4, rng)
        td = tree_to_width1_td(g)
        for m in range(g.n + 1):
            assert dp_min_size_cut_td(g, td, m)[1] == dp_min_size_cut_tree(g, m)[1]


def test_dp_td_partial_two_tree_matches_subsets():
    rng = Xorshift64Star(135)
    g, td = random_partial_ktree(16, 3, rng)
    for m in range(17):
        cut, w = dp_min_size_cut_td(g, td, m)
        assert len(cut.black) == m
        assert cut.width == w
        assert w == oracles.min_cut_over_subsets(g, m)


def test_dp_td_width_guard():
    g = Graph(14, [])
    td = TreeDecomposition([set(range(1, 15))], [])
    with pytest.raises(WidthTooLarge):
        dp_min_size_cut_td(g, td, 3)
