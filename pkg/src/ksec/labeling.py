"""Labelings of trees along a fixed path.

Removing the edges of a path P from a tree splits the tree into one
subtree T_v per path vertex v.  The labeling built here assigns
1..n so that each subtree's vertices occupy a consecutive block, the
path vertex closes its block, and blocks follow the path order.  All
label arithmetic is cyclic modulo n (residues kept in 1..n).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvariantViolation, NotATree, PathNotInTree
from .graph import Graph, is_connected, validate_forest


@dataclass(frozen=True)
class PathDecomposition:
    """Subtrees T_v hanging off a fixed path of a tree.

    ``subtree_of`` maps every vertex to its path vertex; ``subtree_members``
    maps each path vertex v to V(T_v) (including v itself).
    """

    tree: Graph
    path: tuple
    subtree_of: dict
    subtree_members: dict

    @property
    def x0(self) -> int:
        return self.path[0]

    @property
    def y0(self) -> int:
        return self.path[-1]


@dataclass(frozen=True)
class PLabeling:
    """Bijection vertex <-> label plus O(1) path-distance machinery.

    ``path_prefix[x]`` counts path vertices with label < x, so
    d_P(x, y) is a prefix difference.  ``on_path[x]`` flags labels of
    path vertices.
    """

    n: int
    label_of: tuple
    vertex_of: tuple
    path_prefix: tuple
    on_path: tuple
    num_path: int

    def label(self, vertex: int) -> int:
        return self.label_of[vertex]

    def vertex(self, label: int) -> int:
        return self.vertex_of[cyclic(label, self.n)]


def cyclic(label: int, n: int) -> int:
    """Normalize an integer to its representative in 1..n."""
    return (label - 1) % n + 1


def is_between(b: int, a: int, c: int, n: int) -> bool:
    """True iff walking cyclically from a reaches b no later than c."""
    a, b, c = cyclic(a, n), cyclic(b, n), cyclic(c, n)
    if a == c:
        return b == a
    return (b - a) % n <= (c - a) % n


def decompose_along_path(tree: Graph, path) -> PathDecomposition:
    """Split ``tree`` into the subtrees hanging off ``path``."""
    if not (validate_forest(tree) and is_connected(tree)) or tree.n == 0:
        raise NotATree("decompose_along_path requires a connected acyclic graph")
    path = tuple(path)
    if len(set(path)) != len(path) or not path:
        raise PathNotInTree("path vertices must be distinct and non-empty")
    for a, b in zip(path, path[1:]):
        if not tree.has_edge(a, b):
            raise PathNotInTree(f"({a},{b}) is not an edge of the tree")
    path_edges = {frozenset(e) for e in zip(path, path[1:])}
    subtree_of = {}
    members = {v: [v] for v in path}
    stack = list(path)
    for v in path:
        subtree_of[v] = v
    while stack:
        u = stack.pop()
        anchor = subtree_of[u]
        for w in tree.adj[u]:
            if w in subtree_of or frozenset((u, w)) in path_edges:
                continue
            subtree_of[w] = anchor
            members[anchor].append(w)
            stack.append(w)
    if len(subtree_of) != tree.n:
        raise PathNotInTree("path does not lie in this tree")
    return PathDecomposition(
        tree=tree,
        path=path,
        subtree_of=subtree_of,
        subtree_members={v: frozenset(m) for v, m in members.items()},
    )


def p_labeling(dec: PathDecomposition) -> PLabeling:
    """Label vertices by a DFS from y0 that finishes each subtree in a block.

    The path predecessor is forced to the front of each path vertex's
    adjacency list; remaining neighbors are visited ascending by id, so
    the labeling is deterministic.
    """
    tree, path = dec.tree, dec.path
    n = tree.n
    order: dict[int, list[int]] = {}
    pred = {path[h]: path[h - 1] for h in range(1, len(path))}
    for v in tree.vertices():
        nbrs = list(tree.adj[v])
        if v in pred:
            nbrs.remove(pred[v])
            nbrs = [pred[v]] + nbrs
        order[v] = nbrs

    label_of = [0] * (n + 1)
    vertex_of = [0] * (n + 1)
    prefix = [0] * (n + 2)
    on_path = [False] * (n + 1)
    path_set = set(path)
    next_label = 1
    path_seen = 0

    visited = [False] * (n + 1)
    stack = [(dec.y0, iter(order[dec.y0]))]
    visited[dec.y0] = True
    while stack:
        v, it = stack[-1]
        advanced = False
        for w in it:
            if not visited[w]:
                visited[w] = True
                stack.append((w, iter(order[w])))
                advanced = True
                break
        if advanced:
            continue
        stack.pop()
        label_of[v] = next_label
        vertex_of[next_label] = v
        prefix[next_label] = path_seen
        if v in path_set:
            on_path[next_label] = True
            path_seen += 1
        next_label += 1
    if next_label != n + 1:
        raise InvariantViolation("DFS did not reach every vertex")
    prefix[n + 1] = path_seen
    return PLabeling(
        n=n,
        label_of=tuple(label_of),
        vertex_of=tuple(vertex_of),
        path_prefix=tuple(prefix),
        on_path=tuple(on_path),
        num_path=len(path),
    )


def d_p(lab: PLabeling, x: int, y: int) -> int:
    """Count path vertices between labels x and y, excluding y (cyclic)."""
    n = lab.n
    x, y = cyclic(x, n), cyclic(y, n)
    if x <= y:
        return lab.path_prefix[y] - lab.path_prefix[x]
    return lab.num_path - lab.path_prefix[x] + lab.path_prefix[y]


def find_anchor(lab: PLabeling, m: int) -> int:
    """Smallest label v with d_P(v, v+m) = floor(diam* * m) hitting the path.

    The returned v satisfies: v or v+m is a path vertex.  Existence is
    guaranteed by an averaging argument; failure to find one means the
    labeling is corrupt.
    """
    n = lab.n
    target = (lab.num_path * m) // n
    for v in range(1, n + 1):
        if lab.on_path[v] or lab.on_path[cyclic(v + m, n)]:
            if d_p(lab, v, v + m) == target:
                return v
    raise InvariantViolation(f"no anchor for m={m}; labeling corrupt")


def labels_interval(lab: PLabeling, start: int, count: int) -> set[int]:
    """Vertices whose labels are start, start+1, ..., start+count-1 (cyclic)."""
    n = lab.n
    return {lab.vertex_of[cyclic(start + i, n)] for i in range(count)}


def relative_diameter_of_labeling(lab: PLabeling) -> Fraction:
    return Fraction(lab.num_path, lab.n)
