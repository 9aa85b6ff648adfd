"""Undirected simple graphs on vertex set {1, ..., n}, plus cut accounting.

Everything here is immutable after construction and safe for concurrent
reads.  Vertices are dense 1-indexed integers; parsers reject anything
else.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import FormatError, KsecError, NotAForest, NotAPartition, NotATree


class Graph:
    """Undirected simple graph with adjacency lists.

    Invariants: no self-loops, no parallel edges, vertex ids are exactly
    1..n.  Adjacency lists are kept sorted ascending so that every
    traversal in the package is deterministic.
    """

    __slots__ = ("n", "edges", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise KsecError(f"vertex count must be non-negative, got {n}")
        edge_set = set()
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise KsecError(f"edge ({u},{v}) out of vertex range 1..{n}")
            if u == v:
                raise KsecError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in edge_set:
                raise KsecError(f"parallel edge ({e[0]},{e[1]})")
            edge_set.add(e)
        adj: list[list[int]] = [[] for _ in range(n + 1)]
        for u, v in edge_set:
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self.edges = frozenset(edge_set)
        self.adj = tuple(tuple(sorted(a)) for a in adj)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edges

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"


@dataclass(frozen=True)
class Cut:
    """Two-sided cut (B, W); ``width`` is the number of crossing edges."""

    black: frozenset
    white: frozenset
    width: int

    @classmethod
    def from_black(cls, g: Graph, black: Iterable[int]) -> "Cut":
        b = frozenset(black)
        w = frozenset(g.vertices()) - b
        width = sum(1 for (u, v) in g.edges if (u in b) != (v in b))
        return cls(b, w, width)


@dataclass(frozen=True)
class KSection:
    """Ordered partition (V_1, ..., V_k) with balanced part sizes."""

    parts: tuple
    width: int

    @property
    def k(self) -> int:
        return len(self.parts)

    @classmethod
    def from_parts(cls, g: Graph, parts: Sequence[Iterable[int]]) -> "KSection":
        tidy = tuple(tuple(sorted(p)) for p in parts)
        width = cut_width(g, [set(p) for p in tidy])
        return cls(tidy, width)


def bfs_distances(g: Graph, source: int) -> list[int]:
    """BFS distances from ``source``; -1 for unreachable vertices."""
    dist = [-1] * (g.n + 1)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def components(g: Graph) -> list[set[int]]:
    """Connected components as vertex sets, ascending by minimum vertex id."""
    seen = [False] * (g.n + 1)
    comps = []
    for s in g.vertices():
        if seen[s]:
            continue
        comp = {s}
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.add(w)
                    queue.append(w)
        comps.append(comp)
    return comps


def validate_forest(g: Graph) -> bool:
    """True iff g is acyclic (every component a tree)."""
    return len(g.edges) == g.n - len(components(g))


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def max_degree(g: Graph) -> int:
    if g.n == 0:
        return 0
    return max(len(g.adj[v]) for v in g.vertices())


def _farthest(g: Graph, source: int) -> tuple[int, int, list[int]]:
    """(vertex, distance, parents) of the farthest vertex from source.

    Ties break toward the smaller vertex id; parents come from a BFS that
    scans sorted adjacency, so the returned tree is deterministic.
    """
    dist = [-1] * (g.n + 1)
    parent = [0] * (g.n + 1)
    dist[source] = 0
    queue = deque([source])
    best, best_d = source, 0
    while queue:
        u = queue.popleft()
        if dist[u] > best_d or (dist[u] == best_d and u < best):
            best, best_d = u, dist[u]
        for w in g.adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                parent[w] = u
                queue.append(w)
    return best, best_d, parent


def longest_path(tree: Graph) -> list[int]:
    """A longest path in a tree via the double BFS sweep.

    Returns the vertex sequence; its length in edges is diam(tree).  The
    result is normalized so that the first endpoint has the smaller id.
    """
    if not validate_forest(tree) or not is_connected(tree):
        raise NotATree("longest_path requires a connected acyclic graph")
    if tree.n == 0:
        raise NotATree("empty graph")
    a, _, _ = _farthest(tree, 1)
    b, _, parent = _farthest(tree, a)
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    if path[0] > path[-1]:
        path.reverse()
    return path


def diameter(tree: Graph) -> int:
    return len(longest_path(tree)) - 1


def relative_diameter(g: Graph) -> Fraction:
    """diam*(g) = (1/n) * sum over components of (diameter + 1), exact."""
    if not validate_forest(g):
        raise NotAForest("relative_diameter requires a forest")
    if g.n == 0:
        raise NotAForest("empty graph has no relative diameter")
    total = 0
    for comp in components(g):
        sub, _ = induced_subgraph(g, sorted(comp))
        total += diameter(sub) + 1
    return Fraction(total, g.n)


def cut_width(g: Graph, parts: Sequence[Iterable[int]]) -> int:
    """Number of edges of g whose endpoints lie in distinct parts."""
    part_of = [-1] * (g.n + 1)
    for idx, part in enumerate(parts):
        for v in part:
            if not (1 <= v <= g.n) or part_of[v] != -1:
                raise NotAPartition(f"vertex {v} repeated or out of range")
            part_of[v] = idx
    if any(part_of[v] == -1 for v in g.vertices()):
        raise NotAPartition("parts do not cover the vertex set")
    return sum(1 for (u, v) in g.edges if part_of[u] != part_of[v])


def link_components(g: Graph) -> Graph:
    """Connect a forest into a tree without changing diam* or (for Δ ≥ 2) Δ.

    Each added edge joins the ends of longest paths in two consecutive
    components, so the longest paths chain into one longest path.
    """
    if not validate_forest(g):
        raise NotAForest("link_components requires a forest")
    comps = components(g)
    if len(comps) <= 1:
        return g
    ends = []
    for comp in comps:
        order = sorted(comp)
        sub, old_of = induced_subgraph(g, order)
        p = longest_path(sub)
        ends.append((old_of[p[0] - 1], old_of[p[-1] - 1]))
    extra = [(ends[i][1], ends[i + 1][0]) for i in range(len(ends) - 1)]
    return Graph(g.n, list(g.edges) + extra)


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph relabeled to 1..|S| by ascending original id.

    Returns (subgraph, old_ids) with old_ids[new - 1] = original id.
    """
    old_of = sorted(set(vertices))
    new_of = {old: i + 1 for i, old in enumerate(old_of)}
    edges = [
        (new_of[u], new_of[v])
        for (u, v) in g.edges
        if u in new_of and v in new_of
    ]
    return Graph(len(old_of), edges), old_of


# --- .gr file format ------------------------------------------------------
#
# c <comment>
# p ks <n> <m>
# <u> <v>          (m edge lines, 1-indexed)

def parse_gr(text: str) -> Graph:
    n = m = -1
    edges: list[tuple[int, int]] = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tok = line.split()
        if tok[0] == "p":
            if n >= 0:
                raise FormatError(lineno, "duplicate problem line")
            if len(tok) != 4 or tok[1] not in ("ks", "tw"):
                raise FormatError(lineno, f"expected 'p ks <n> <m>', got {line!r}")
            try:
                n, m = int(tok[2]), int(tok[3])
            except ValueError:
                raise FormatError(lineno, "non-integer counts in problem line") from None
            if n < 0 or m < 0:
                raise FormatError(lineno, "negative counts in problem line")
            continue
        if n < 0:
            raise FormatError(lineno, "edge line before problem line")
        if len(tok) != 2:
            raise FormatError(lineno, f"expected edge '<u> <v>', got {line!r}")
        try:
            u, v = int(tok[0]), int(tok[1])
        except ValueError:
            raise FormatError(lineno, "non-integer vertex id") from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise FormatError(lineno, f"vertex id out of range 1..{n}")
        if u == v:
            raise FormatError(lineno, "self-loop")
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise FormatError(lineno, f"duplicate edge ({e[0]},{e[1]})")
        seen.add(e)
        edges.append(e)
    if n < 0:
        raise FormatError(1, "missing problem line")
    if len(edges) != m:
        raise FormatError(1, f"problem line declares {m} edges, found {len(edges)}")
    return Graph(n, edges)


def write_gr(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        for part in comment.splitlines():
            lines.append(f"c {part}")
    lines.append(f"p ks {g.n} {len(g.edges)}")
    for u, v in sorted(g.edges):
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"
