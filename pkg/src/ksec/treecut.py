"""Cutting primitives for trees and forests.

Three operations:

* ``approximate_cut``       -- an approximate m-cut (m/2 <= |B| <= m) of
                               width at most the maximum degree, avoiding
                               a designated vertex;
* ``exact_cut_bounded``     -- |B| = m exactly, width within the
                               relative-diameter guarantees (backed by
                               the exact DP, which dominates them);
* ``diameter_preserving_cut`` -- |B| = m and diam*(G[W]) >= diam*(G),
                               the workhorse the k-section loop iterates.

The last one follows a five-way case analysis over the anchor position
in the path labeling; the executed case is recorded in a trace.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import oracle
from .errors import InvariantViolation, MOutOfRange, NotAForest, NotATree
from .graph import (
    Cut,
    Graph,
    components,
    induced_subgraph,
    is_connected,
    link_components,
    longest_path,
    max_degree,
    validate_forest,
)
from .labeling import (
    PLabeling,
    cyclic,
    decompose_along_path,
    find_anchor,
    labels_interval,
    p_labeling,
)


@dataclass(frozen=True)
class DiamCutTrace:
    """What the diameter-preserving cut actually did."""

    case_tag: str
    m: int
    anchor: int | None = None
    floor_dm: int | None = None
    m_set: frozenset | None = None
    z: int | None = None
    m_tilde: int | None = None
    b_z: frozenset | None = None
    w_z: frozenset | None = None
    v_tilde: frozenset | None = None
    inner_width: int | None = None
    outer_width: int | None = None

    def to_dict(self) -> dict:
        def conv(x):
            if isinstance(x, frozenset):
                return sorted(x)
            return x

        return {k: conv(v) for k, v in self.__dict__.items()}


def approximate_cut(tree: Graph, v: int, m: int) -> Cut:
    """Approximate m-cut (B, W) with width <= Δ(tree) and v in W.

    For m >= n-1 the black set is everything but v; otherwise the cut is
    assembled from rooted subtrees below a deepest vertex whose subtree
    still exceeds m.
    """
    n = tree.n
    if not (validate_forest(tree) and is_connected(tree)):
        raise NotATree("approximate_cut requires a connected acyclic graph")
    if not (1 <= m <= 2 * n - 2):
        raise MOutOfRange(f"m={m} not in 1..{2 * n - 2}")
    if m >= n - 1:
        return Cut.from_black(tree, set(tree.vertices()) - {v})

    parent = {v: 0}
    order = [v]
    for u in order:
        for w in tree.adj[u]:
            if w not in parent:
                parent[w] = u
                order.append(w)
    size = {u: 1 for u in order}
    for u in reversed(order):
        if parent[u]:
            size[parent[u]] += size[u]

    x = v
    while True:
        down = [w for w in tree.adj[x] if parent[w] == x and size[w] > m]
        if not down:
            break
        x = min(down)

    children = [w for w in tree.adj[x] if parent[w] == x]
    heavy = [w for w in children if 2 * size[w] >= m]
    black: set[int] = set()
    if heavy:
        pick = min(heavy)
        stack = [pick]
        while stack:
            u = stack.pop()
            black.add(u)
            stack.extend(w for w in tree.adj[u] if parent[w] == u)
    else:
        for w in sorted(children):
            if 2 * len(black) >= m:
                break
            stack = [w]
            while stack:
                u = stack.pop()
                black.add(u)
                stack.extend(ww for ww in tree.adj[u] if parent[ww] == u)
    if not (m <= 2 * len(black) and len(black) <= m):
        raise InvariantViolation("approximate cut missed its size window")
    return Cut.from_black(tree, black)


def exact_cut_bounded(forest: Graph, m: int) -> Cut:
    """Minimum-width cut with |B| = m in a forest.

    The exact optimum automatically satisfies the (8/diam*)Δ guarantee
    and its polylog refinement, since cuts within those bounds exist.
    """
    if not validate_forest(forest):
        raise NotAForest("exact_cut_bounded requires a forest")
    if not (1 <= m <= forest.n):
        raise MOutOfRange(f"m={m} not in 1..{forest.n}")
    cut, _ = oracle.dp_min_size_cut_tree(forest, m)
    return cut


def _deg2_cut(g: Graph, m: int) -> tuple[Cut, DiamCutTrace]:
    """Forests of maximum degree <= 2 are disjoint paths: take a prefix."""
    black: set[int] = set()
    need = m
    for comp in components(g):
        if need == 0:
            break
        order = sorted(comp)
        endpoints = [u for u in order if sum(1 for w in g.adj[u] if w in comp) <= 1]
        walk = [min(endpoints)]
        prev = 0
        while len(walk) < len(comp):
            nxt = [w for w in g.adj[walk[-1]] if w != prev]
            prev = walk[-1]
            walk.append(nxt[0])
        take = min(need, len(walk))
        black.update(walk[:take])
        need -= take
    cut = Cut.from_black(g, black)
    return cut, DiamCutTrace(case_tag="Deg2", m=m)


def _subtree_cut(
    tree: Graph, lab: PLabeling, members: frozenset, z: int, m_tilde: int
) -> Cut:
    """Approximate m̃-cut inside T_z keeping z white, in original vertex ids."""
    sub, old_of = induced_subgraph(tree, sorted(members))
    new_of = {old: i + 1 for i, old in enumerate(old_of)}
    local = approximate_cut(sub, new_of[z], m_tilde)
    return Cut.from_black(tree, {old_of[u - 1] for u in local.black})


def diameter_preserving_cut(forest: Graph, m: int) -> tuple[Cut, DiamCutTrace]:
    """Cut with |B| = m, diam*(G[W]) >= diam*(G), width <= (2 + 16/diam*)Δ.

    Disconnected inputs are linked into a tree first; any cut of the
    linked tree only loses width when read back in the forest, and
    removing the linking edges cannot decrease diam* of G[W].
    """
    n = forest.n
    if not validate_forest(forest):
        raise NotAForest("diameter_preserving_cut requires a forest")
    if not (1 <= m <= n - 1):
        raise MOutOfRange(f"m={m} not in 1..{n - 1}")
    delta = max_degree(forest)
    if delta <= 2:
        return _deg2_cut(forest, m)

    tree = link_components(forest)
    path = longest_path(tree)
    dec = decompose_along_path(tree, path)
    lab = p_labeling(dec)
    floor_dm = (lab.num_path * m) // n
    v = find_anchor(lab, m)
    m_vertices = frozenset(labels_interval(lab, v, m))
    v_on = lab.on_path[v]
    vm_label = cyclic(v + m, n)
    vm_on = lab.on_path[vm_label]
    vm_vertex = lab.vertex_of[vm_label]

    if v_on and vm_on:
        cut = Cut.from_black(forest, m_vertices)
        return cut, DiamCutTrace(
            case_tag="Case1", m=m, anchor=v, floor_dm=floor_dm, m_set=m_vertices
        )

    if v_on:
        z = dec.subtree_of[vm_vertex]
        if lab.on_path[cyclic(v + m - 1, n)]:
            cut = Cut.from_black(forest, m_vertices)
            return cut, DiamCutTrace(
                case_tag="Case2a", m=m, anchor=v, floor_dm=floor_dm, m_set=m_vertices, z=z
            )
        members = dec.subtree_members[z]
        t_z_prime = members - {z}
        m_tilde = 2 * len(t_z_prime & m_vertices)
        cut_z = _subtree_cut(tree, lab, members, z, m_tilde)
        v_tilde = (m_vertices - t_z_prime) | cut_z.black
        case = "Case2b"
    else:
        z = dec.subtree_of[lab.vertex_of[v]]
        members = dec.subtree_members[z]
        t_z_prime = members - {z}
        m_tilde = 2 * len(t_z_prime & m_vertices)
        cut_z = _subtree_cut(tree, lab, members, z, m_tilde)
        if z == vm_vertex:
            v_tilde = frozenset(cut_z.black)
            case = "Case3a"
        else:
            v_tilde = (m_vertices - (t_z_prime | {z})) | cut_z.black | {vm_vertex}
            case = "Case3b"

    if not (m <= len(v_tilde) <= 2 * m) or z in v_tilde:
        raise InvariantViolation(f"{case}: bad inner vertex set")
    sub, old_of = induced_subgraph(tree, sorted(v_tilde))
    inner_cut, inner_width = oracle.dp_min_size_cut_tree(sub, m)
    black = {old_of[u - 1] for u in inner_cut.black}
    outer = sum(1 for (a, b) in tree.edges if (a in v_tilde) != (b in v_tilde))
    if outer > 2 * delta:
        raise InvariantViolation(f"{case}: outer cut exceeds 2Δ")
    cut = Cut.from_black(forest, black)
    return cut, DiamCutTrace(
        case_tag=case,
        m=m,
        anchor=v,
        floor_dm=floor_dm,
        m_set=m_vertices,
        z=z,
        m_tilde=m_tilde,
        b_z=cut_z.black,
        w_z=frozenset(members - cut_z.black),
        v_tilde=v_tilde,
        inner_width=inner_width,
        outer_width=outer,
    )
