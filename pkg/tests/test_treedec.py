from fractions import Fraction

import pytest

import oracles
from conftest import path
from ksec.errors import FormatError, NotATreeDecomposition
from ksec.graph import Graph, diameter
from ksec.instances import Xorshift64Star, random_partial_ktree, random_tree_maxdeg
from ksec.treedec import (
    TreeDecomposition,
    cluster_incident_edges,
    heaviest_path,
    induced,
    make_nonredundant,
    parse_td,
    remove_cluster_parts,
    tree_to_width1_td,
    validate,
    validation_errors,
    write_td,
)


def p4_td():
    return TreeDecomposition([{1, 2}, {2, 3}, {3, 4}], [(1, 2), (2, 3)])


def test_constructor_rejects_non_trees():
    with pytest.raises(NotATreeDecomposition):
        TreeDecomposition([{1}, {2}], [])  # disconnected
    with pytest.raises(NotATreeDecomposition):
        TreeDecomposition([{1}, {2}, {3}], [(1, 2), (2, 3), (1, 3)])
    with pytest.raises(NotATreeDecomposition):
        TreeDecomposition([], [])


def test_validate_examples():
    g = path(4)
    single = TreeDecomposition([set(g.vertices())], [])
    assert validate(single, g)
    assert single.width == 3

    td = p4_td()
    assert validate(td, g)
    assert td.width == 1

    broken = TreeDecomposition([{1, 2}, {2}, {3, 4}], [(1, 2), (2, 3)])
    errors = validation_errors(broken, g)
    assert ("T2", (2, 3)) in errors


def test_validate_t3_witness():
    g = Graph(3, [])
    td = TreeDecomposition([{1}, {2}, {1, 3}], [(1, 2), (2, 3)])
    assert ("T3", 1) in validation_errors(td, g)


def test_validate_equals_triple_checker():
    rng = Xorshift64Star(2024)
    for _ in range(60):
        g, td = random_partial_ktree(rng.randint(3, 24), rng.randint(2, 4), rng)
        assert validate(td, g)
        assert oracles.naive_t3_holds(td)
        # break T3 by injecting a vertex into a far cluster
        bags = [set(b) for b in td.bags]
        if td.num_nodes >= 3:
            bags[-1].add(min(bags[0]) if bags[0] else 1)
            hacked = TreeDecomposition(bags, td.tree_edges)
            assert validate(hacked, g) == oracles.naive_t3_holds(hacked)


def test_induced_examples():
    td = p4_td()
    g = path(4)
    assert induced(td, set(g.vertices())).bags == td.bags
    assert all(not b for b in induced(td, set()).bags)
    sub = induced(td, {1, 2})
    assert sub.bags == (frozenset({1, 2}), frozenset({2}), frozenset())
    assert sub.width <= td.width and sub.size <= td.size


def test_make_nonredundant_examples():
    td = p4_td()
    out = make_nonredundant(td)
    assert out.num_nodes == 3 and out.width == 1  # already nonredundant

    chain = TreeDecomposition([{1, 2}, {1, 2}, {2, 3}], [(1, 2), (2, 3)])
    out = make_nonredundant(chain)
    assert out.num_nodes == 2
    assert set(out.bags) == {frozenset({1, 2}), frozenset({2, 3})}


def test_make_nonredundant_random_postconditions():
    rng = Xorshift64Star(555)
    for _ in range(200):
        n = rng.randint(2, 30)
        g, td = random_partial_ktree(n, rng.randint(2, 4), rng)
        # make it redundant: subdivide by duplicating clusters and add empties
        bags = list(td.bags)
        edges = list(td.tree_edges)
        dup = rng.randint(1, td.num_nodes)
        bags.append(td.bag(dup))
        edges.append((dup, len(bags)))
        bags.append(frozenset())
        edges.append((rng.randint(1, td.num_nodes), len(bags)))
        redundant = TreeDecomposition(bags, edges)
        before_r = heaviest_path(redundant, n).relative_weight

        out = make_nonredundant(redundant)
        assert validate(out, g)
        assert out.width == redundant.width
        assert out.size <= redundant.size
        assert heaviest_path(out, n).relative_weight >= before_r
        for i, j in out.tree_edges:
            assert not out.bag(i) <= out.bag(j)
            assert not out.bag(j) <= out.bag(i)
        if out.num_nodes > 1:
            assert all(out.bag(i) for i in out.nodes())  # empty clusters are gone


def test_heaviest_path_path_shaped():
    td = p4_td()
    res = heaviest_path(td, 4)
    assert res.weight == 4 and res.relative_weight == 1
    assert res.path == (1, 2, 3)


def test_heaviest_path_small_matches_bruteforce():
    td = TreeDecomposition(
        [{1, 2}, {2, 3}, {3, 4, 5}, {5, 6}, {3, 7}, {7, 8, 9}],
        [(1, 2), (2, 3), (3, 4), (3, 5), (5, 6)],
    )
    assert heaviest_path(td, 9).weight == oracles.naive_heaviest_path_weight(td)


def test_heaviest_path_random_matches_bruteforce():
    rng = Xorshift64Star(777)
    for _ in range(80):
        g, td = random_partial_ktree(rng.randint(2, 26), rng.randint(2, 4), rng)
        res = heaviest_path(td, g.n)
        assert res.weight == oracles.naive_heaviest_path_weight(td)
        union = set()
        for i in res.path:
            union |= td.bag(i)
        assert len(union) == res.weight
        assert Fraction(1, g.n) <= res.relative_weight <= 1


def test_width1_td_of_tree_reaches_diameter_weight():
    rng = Xorshift64Star(31337)
    for _ in range(50):
        tree = random_tree_maxdeg(rng.randint(2, 40), 5, rng)
        td = tree_to_width1_td(tree)
        assert validate(td, tree)
        assert td.width <= 1
        r = heaviest_path(td, tree.n).relative_weight
        assert r >= Fraction(diameter(tree) + 1, tree.n)


def test_heaviest_path_on_induced_decompositions():
    # induced decompositions carry empty clusters; the DP must stay exact
    rng = Xorshift64Star(17)
    for _ in range(60):
        g, td = random_partial_ktree(rng.randint(4, 22), 3, rng)
        keep = {v for v in g.vertices() if rng.chance(2, 3)}
        sub = induced(td, keep)
        assert heaviest_path(sub, max(1, len(keep))).weight == \
            oracles.naive_heaviest_path_weight(sub)


def test_heaviest_path_dominates_sampled_paths():
    rng = Xorshift64Star(606060)
    samples = 0
    while samples < 1000:
        g, td = random_partial_ktree(rng.randint(2, 30), 3, rng)
        best = heaviest_path(td, g.n).weight
        import networkx as nx

        h = nx.Graph()
        h.add_nodes_from(range(1, td.num_nodes + 1))
        h.add_edges_from(td.tree_edges)
        for _ in range(25):
            a = rng.randint(1, td.num_nodes)
            b = rng.randint(1, td.num_nodes)
            union = set()
            for i in nx.shortest_path(h, a, b):
                union |= td.bag(i)
            assert len(union) <= best
            samples += 1


def test_cluster_incident_edges_examples():
    g = path(4)
    td = p4_td()
    assert cluster_incident_edges(td, g, 2) == {(1, 2), (2, 3), (3, 4)}
    single = TreeDecomposition([set(g.vertices())], [])
    assert cluster_incident_edges(single, g, 1) == set(g.edges)
    empty = TreeDecomposition([set(), set(g.vertices())], [(1, 2)])
    assert cluster_incident_edges(empty, g, 1) == set()
    t = td.width + 1
    for i in td.nodes():
        assert len(cluster_incident_edges(td, g, i)) <= t * 2


def test_remove_cluster_parts_examples():
    g = path(4)
    td = p4_td()
    parts = remove_cluster_parts(td, g, 1)
    assert parts == [{1}, {2}, {3, 4}]
    single = TreeDecomposition([set(g.vertices())], [])
    assert remove_cluster_parts(single, g, 1) == [{1}, {2}, {3}, {4}]


def test_remove_cluster_parts_random_edge_scan():
    rng = Xorshift64Star(808)
    for _ in range(60):
        g, td = random_partial_ktree(rng.randint(2, 24), 3, rng)
        for i in td.nodes():
            parts = remove_cluster_parts(td, g, i)
            assert len(parts) == len(td.tree_adj[i]) + len(td.bag(i))
            everything = set()
            for p in parts:
                assert everything.isdisjoint(p)
                everything |= p
            assert everything == set(g.vertices())
            removed = cluster_incident_edges(td, g, i)
            where = {}
            for idx, p in enumerate(parts):
                for v in p:
                    where[v] = idx
            for (u, v) in g.edges - removed:
                assert where[u] == where[v]  # no edge joins distinct parts


def test_td_roundtrip_and_errors():
    td = p4_td()
    text = write_td(td, 4, comment="demo")
    back, n = parse_td(text)
    assert n == 4 and back.bags == td.bags and back.tree_edges == td.tree_edges
    assert write_td(back, n) == write_td(td, 4, comment="demo").replace("c demo\n", "")

    with pytest.raises(FormatError):
        parse_td("b 1 1 2\n")  # bag before header
    with pytest.raises(FormatError):
        parse_td("s td 2 2 3\nb 1 1 2\nb 1 2 3\n1 1\n")  # duplicate bag id
    with pytest.raises(FormatError):
        parse_td("s td 1 2 3\nb 1 1 2 9\n")  # vertex out of range
    with pytest.raises(FormatError):
        parse_td("s td 2 2 3\nb 1 1 2\nb 2 2 3\n")  # missing tree edge
    with pytest.raises(FormatError):
        parse_td("s td 1 3 3\nb 1 1 2\n")  # declared max bag size wrong
