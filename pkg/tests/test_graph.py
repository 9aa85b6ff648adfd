from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import path, star
from ksec.errors import FormatError, KsecError, NotAPartition, NotATree
from ksec.graph import (
    Graph,
    components,
    cut_width,
    diameter,
    induced_subgraph,
    link_components,
    longest_path,
    max_degree,
    parse_gr,
    relative_diameter,
    validate_forest,
    write_gr,
)
from ksec.instances import Xorshift64Star, random_tree_maxdeg


def test_graph_rejects_bad_edges():
    with pytest.raises(KsecError):
        Graph(3, [(1, 1)])
    with pytest.raises(KsecError):
        Graph(3, [(1, 4)])
    with pytest.raises(KsecError):
        Graph(3, [(1, 2), (2, 1)])


def test_validate_forest_examples():
    assert validate_forest(path(4))
    assert not validate_forest(Graph(3, [(1, 2), (2, 3), (1, 3)]))
    assert validate_forest(Graph(3, []))


def test_max_degree_examples():
    assert max_degree(star(5)) == 4
    assert max_degree(path(5)) == 2
    assert max_degree(Graph(1, [])) == 0


def test_components_examples():
    g = Graph(5, [(1, 2), (2, 3), (4, 5)])
    assert components(g) == [{1, 2, 3}, {4, 5}]
    assert components(path(4)) == [{1, 2, 3, 4}]
    assert components(Graph(2, [])) == [{1}, {2}]


def test_longest_path_examples():
    assert longest_path(path(6)) == [1, 2, 3, 4, 5, 6]
    lp = longest_path(star(4))
    assert len(lp) == 3 and lp[1] == 1  # leaf-center-leaf
    with pytest.raises(NotATree):
        longest_path(Graph(4, [(1, 2), (3, 4)]))


def test_longest_path_adversarial_contains_path_part_and_root():
    from ksec.instances import adversarial_ternary_path

    g = adversarial_ternary_path(2)
    t = (3 ** 3 - 1) // 2
    lp = set(longest_path(g))
    assert set(range(t + 1, 2 * t + 1)) <= lp
    assert 1 in lp  # the ternary root


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 60), st.integers(2, 200))
def test_longest_path_matches_bfs_diameter(seed, n):
    g = random_tree_maxdeg(n, 5, Xorshift64Star(seed))
    assert len(longest_path(g)) - 1 == oracles.bfs_diameter(g)


def test_relative_diameter_examples():
    assert relative_diameter(path(7)) == 1
    assert relative_diameter(star(4)) == Fraction(3, 4)
    forest = Graph(8, [(1, 2), (1, 3), (1, 4), (5, 6), (6, 7), (7, 8)])
    assert relative_diameter(forest) == Fraction(7, 8)


def test_cut_width_examples():
    g = path(9)
    assert cut_width(g, [{1, 2, 3}, {4, 5, 6}, {7, 8, 9}]) == 2
    assert cut_width(g, [set(range(1, 10))]) == 0
    assert cut_width(star(7), [{2, 3, 4}, {1, 5, 6, 7}]) == 3
    with pytest.raises(NotAPartition):
        cut_width(g, [{1, 2}, {2, 3}])
    with pytest.raises(NotAPartition):
        cut_width(g, [{1, 2, 3}])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 60), st.integers(2, 40), st.integers(2, 5))
def test_cut_width_matches_recount(seed, n, k):
    rng = Xorshift64Star(seed)
    g = random_tree_maxdeg(n, 6, rng)
    parts = [set() for _ in range(k)]
    for v in g.vertices():
        parts[rng.randint(0, k - 1)].add(v)
    assert cut_width(g, parts) == oracles.recount_cut(g, parts)


def test_link_components_examples():
    g = Graph(7, [(1, 2), (2, 3), (4, 5), (5, 6), (6, 7)])
    t = link_components(g)
    assert validate_forest(t) and len(components(t)) == 1
    assert len(t.edges) == len(g.edges) + 1
    assert relative_diameter(t) == 1  # P7

    connected = path(5)
    assert link_components(connected) is connected

    two_stars = Graph(8, [(1, 2), (1, 3), (1, 4), (5, 6), (5, 7), (5, 8)])
    t = link_components(two_stars)
    assert relative_diameter(t) == Fraction(6, 8)
    assert max_degree(t) == 3


def test_link_components_preserves_invariants_many():
    rng = Xorshift64Star(20240809)
    for _ in range(1000):
        g = oracles.random_forest(rng, n_lo=2, n_hi=40)
        t = link_components(g)
        assert g.edges <= t.edges  # any cut in t is at least as wide in g
        assert len(components(t)) == 1
        assert relative_diameter(t) == relative_diameter(g)
        if max_degree(g) >= 2:
            assert max_degree(t) == max_degree(g)


def test_gr_roundtrip_and_errors():
    g = Graph(4, [(1, 2), (2, 3), (2, 4)])
    text = write_gr(g, comment="demo")
    assert parse_gr(text) == g
    assert parse_gr(write_gr(parse_gr(text))) == g

    with pytest.raises(FormatError) as err:
        parse_gr("p ks 3 1\n1 5\n")
    assert err.value.line == 2
    with pytest.raises(FormatError):
        parse_gr("1 2\n")
    with pytest.raises(FormatError):
        parse_gr("p ks 3 2\n1 2\n")  # declared edge count mismatch
    with pytest.raises(FormatError):
        parse_gr("p ks 3 2\n1 2\n1 2\n")  # duplicate edge


def test_induced_subgraph_relabels_densely():
    g = path(6)
    sub, old = induced_subgraph(g, [2, 3, 5, 6])
    assert sub.n == 4 and old == [2, 3, 5, 6]
    assert sub.edges == frozenset({(1, 2), (3, 4)})
    assert diameter(path(9)) == 8
