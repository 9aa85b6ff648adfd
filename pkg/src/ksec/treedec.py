"""Tree decompositions: representation, validation, normalization, heaviest paths.

Decomposition nodes are dense 1-indexed integers; clusters are vertex
sets of the underlying graph.  Empty clusters are allowed (they arise
from induced decompositions); ``make_nonredundant`` removes them except
in the degenerate single-node case.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import FormatError, NotATreeDecomposition
from .graph import Graph


class TreeDecomposition:
    __slots__ = ("num_nodes", "bags", "tree_adj", "tree_edges")

    def __init__(self, bags: Sequence[Iterable[int]], tree_edges: Iterable[tuple[int, int]]):
        num = len(bags)
        if num == 0:
            raise NotATreeDecomposition("a decomposition needs at least one node")
        edge_set = set()
        for i, j in tree_edges:
            if not (1 <= i <= num and 1 <= j <= num):
                raise NotATreeDecomposition(f"tree edge ({i},{j}) out of node range 1..{num}")
            if i == j:
                raise NotATreeDecomposition(f"self-loop at node {i}")
            e = (i, j) if i < j else (j, i)
            if e in edge_set:
                raise NotATreeDecomposition(f"duplicate tree edge ({e[0]},{e[1]})")
            edge_set.add(e)
        if len(edge_set) != num - 1:
            raise NotATreeDecomposition(
                f"{num} nodes need {num - 1} tree edges, got {len(edge_set)}"
            )
        adj: list[list[int]] = [[] for _ in range(num + 1)]
        for i, j in edge_set:
            adj[i].append(j)
            adj[j].append(i)
        # connectivity: num-1 edges + connected <=> tree
        if num > 1:
            seen = [False] * (num + 1)
            seen[1] = True
            queue = deque([1])
            count = 1
            while queue:
                u = queue.popleft()
                for w in adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        count += 1
                        queue.append(w)
            if count != num:
                raise NotATreeDecomposition("decomposition tree is disconnected")
        self.num_nodes = num
        self.bags = tuple(frozenset(b) for b in bags)
        self.tree_adj = tuple(tuple(sorted(a)) for a in adj)
        self.tree_edges = frozenset(edge_set)

    def bag(self, i: int) -> frozenset:
        return self.bags[i - 1]

    def nodes(self) -> range:
        return range(1, self.num_nodes + 1)

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1

    @property
    def size(self) -> int:
        return self.num_nodes + sum(len(b) for b in self.bags)

    def __repr__(self) -> str:
        return f"TreeDecomposition(nodes={self.num_nodes}, width={self.width})"


@dataclass(frozen=True)
class HeaviestPathResult:
    path: tuple
    weight: int
    relative_weight: Fraction


def validation_errors(td: TreeDecomposition, g: Graph) -> list[tuple[str, object]]:
    """Violations of (T1), (T2), (T3'), each with a witness."""
    problems: list[tuple[str, object]] = []
    covered = set()
    for b in td.bags:
        covered |= b
    for v in sorted(covered):
        if not (1 <= v <= g.n):
            problems.append(("bag-range", v))
    for v in g.vertices():
        if v not in covered:
            problems.append(("T1", v))
    for u, v in sorted(g.edges):
        if not any(u in b and v in b for b in td.bags):
            problems.append(("T2", (u, v)))
    occ: dict[int, list[int]] = {}
    for i in td.nodes():
        for v in td.bag(i):
            occ.setdefault(v, []).append(i)
    for v in sorted(occ):
        nodes = set(occ[v])
        start = occ[v][0]
        seen = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in td.tree_adj[u]:
                if w in nodes and w not in seen:
                    seen.add(w)
                    queue.append(w)
        if seen != nodes:
            problems.append(("T3", v))
    return problems


def validate(td: TreeDecomposition, g: Graph) -> bool:
    return not validation_errors(td, g)


def induced(td: TreeDecomposition, vertex_set: Iterable[int]) -> TreeDecomposition:
    """Same tree, clusters intersected with ``vertex_set``."""
    keep = frozenset(vertex_set)
    return TreeDecomposition([b & keep for b in td.bags], td.tree_edges)


def relabel_clusters(td: TreeDecomposition, new_of: dict) -> TreeDecomposition:
    """Rename cluster vertices through ``new_of`` (same decomposition tree)."""
    return TreeDecomposition(
        [frozenset(new_of[v] for v in b) for b in td.bags], td.tree_edges
    )


def make_nonredundant(td: TreeDecomposition) -> TreeDecomposition:
    """Contract tree edges whose endpoint clusters nest.

    Keeps the width, never increases the size, never decreases the
    relative heaviest-path weight.  Deterministic: always contracts the
    smallest eligible edge, absorbing the subset side (on equal clusters
    the larger node id is absorbed).
    """
    alive = set(td.nodes())
    bags = {i: td.bag(i) for i in td.nodes()}
    adj = {i: set(td.tree_adj[i]) for i in td.nodes()}
    while True:
        candidate = None
        for i in sorted(alive):
            for j in sorted(adj[i]):
                if j < i:
                    continue
                if bags[i] <= bags[j] or bags[j] <= bags[i]:
                    candidate = (i, j)
                    break
            if candidate:
                break
        if candidate is None:
            break
        i, j = candidate
        if bags[i] == bags[j]:
            absorbed, survivor = max(i, j), min(i, j)
        elif bags[i] < bags[j]:
            absorbed, survivor = i, j
        else:
            absorbed, survivor = j, i
        for w in adj[absorbed]:
            if w != survivor:
                adj[w].discard(absorbed)
                adj[w].add(survivor)
                adj[survivor].add(w)
        adj[survivor].discard(absorbed)
        del adj[absorbed], bags[absorbed]
        alive.discard(absorbed)
    order = sorted(alive)
    new_id = {old: k + 1 for k, old in enumerate(order)}
    edges = set()
    for i in order:
        for j in adj[i]:
            edges.add((min(new_id[i], new_id[j]), max(new_id[i], new_id[j])))
    return TreeDecomposition([bags[i] for i in order], edges)


def heaviest_path(td: TreeDecomposition, n: int) -> HeaviestPathResult:
    """Path in the decomposition tree maximizing |union of clusters|.

    Exact, relying on (T3'): along any rooted chain a vertex's
    occurrences are contiguous, so extending a chain from child ch to
    node c adds exactly |X^c| - |X^c ∩ X^ch| new vertices.  Ties break
    toward smaller endpoint ids, then the lexicographically smaller
    normalized endpoint pair.
    """
    num = td.num_nodes
    root = 1
    parent = [0] * (num + 1)
    order = [root]
    seen = [False] * (num + 1)
    seen[root] = True
    for u in order:
        for w in td.tree_adj[u]:
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                order.append(w)

    # g[i]: best weight of a chain from some descendant endpoint up to i
    g_val = [0] * (num + 1)
    g_end = [0] * (num + 1)
    best: tuple[int, tuple[int, int]] | None = None
    for i in reversed(order):
        bag_i = td.bag(i)
        g_val[i], g_end[i] = len(bag_i), i
        legs = []  # (gain, endpoint) of extending each child chain to i
        for ch in td.tree_adj[i]:
            if ch == i or parent[ch] != i:
                continue
            gain = g_val[ch] + len(bag_i) - len(bag_i & td.bag(ch))
            legs.append((gain, g_end[ch]))
            if gain > g_val[i] or (gain == g_val[i] and g_end[ch] < g_end[i]):
                g_val[i], g_end[i] = gain, g_end[ch]
        # best path through i: top two legs from distinct children (or fewer)
        candidates = [(len(bag_i), (i, i))]
        for gain, end in legs:
            pair = (min(i, end), max(i, end))
            candidates.append((gain, pair))
        legs.sort(key=lambda t: (-t[0], t[1]))
        if len(legs) >= 2:
            (ga, ea), (gb, eb) = legs[0], legs[1]
            pair = (min(ea, eb), max(ea, eb))
            candidates.append((ga + gb - len(bag_i), pair))
        for w, pair in candidates:
            if best is None or w > best[0] or (w == best[0] and pair < best[1]):
                best = (w, pair)

    a, b = best[1]
    # reconstruct the a..b node path through the rooted tree
    depth = [0] * (num + 1)
    for u in order[1:]:
        depth[u] = depth[parent[u]] + 1
    up_a, up_b = [a], [b]
    x, y = a, b
    while x != y:
        if depth[x] >= depth[y]:
            x = parent[x]
            up_a.append(x)
        else:
            y = parent[y]
            up_b.append(y)
    path = tuple(up_a + up_b[:-1][::-1])
    union = set()
    for i in path:
        union |= td.bag(i)
    if len(union) != best[0]:
        raise AssertionError("heaviest-path DP disagrees with its own path")
    if path[0] > path[-1]:
        path = path[::-1]
    return HeaviestPathResult(path=path, weight=best[0], relative_weight=Fraction(best[0], n))


def cluster_incident_edges(td: TreeDecomposition, g: Graph, i: int) -> set:
    """E_G(i): edges of g touching the cluster of node i."""
    bag = td.bag(i)
    return {e for e in g.edges if e[0] in bag or e[1] in bag}


def remove_cluster_parts(td: TreeDecomposition, g: Graph, i: int) -> list[set]:
    """Disjoint parts of g after deleting E_G(i).

    One singleton per cluster vertex (ascending), then one part per
    component of the decomposition tree minus node i (by ascending
    neighbor id); empty parts are kept.
    """
    bag = td.bag(i)
    parts: list[set] = [{v} for v in sorted(bag)]
    blocked = [False] * (td.num_nodes + 1)
    blocked[i] = True
    for nb in td.tree_adj[i]:
        comp_nodes = [nb]
        blocked[nb] = True
        queue = deque([nb])
        while queue:
            u = queue.popleft()
            for w in td.tree_adj[u]:
                if not blocked[w]:
                    blocked[w] = True
                    comp_nodes.append(w)
                    queue.append(w)
        part = set()
        for node in comp_nodes:
            part |= td.bag(node)
        parts.append(part - bag)
    return parts


def tree_to_width1_td(tree: Graph) -> TreeDecomposition:
    """Width-1 decomposition of a tree: one node per vertex, bag {v, parent}."""
    root = 1
    parent = [0] * (tree.n + 1)
    seen = [False] * (tree.n + 1)
    seen[root] = True
    order = [root]
    for u in order:
        for w in tree.adj[u]:
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                order.append(w)
    bags = []
    for v in tree.vertices():
        bags.append({v} if v == root else {v, parent[v]})
    return TreeDecomposition(bags, [(v, parent[v]) for v in tree.vertices() if v != root])


# --- PACE-2017 .td format ---------------------------------------------------
#
# c <comment>
# s td <#bags> <max bag size> <n>
# b <bag-id> <v...>
# <i> <j>            (decomposition tree edges)

def parse_td(text: str) -> tuple[TreeDecomposition, int]:
    """Parse a .td file; returns (decomposition, declared vertex count)."""
    header = None
    bags: dict[int, frozenset] = {}
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tok = line.split()
        if tok[0] == "s":
            if header is not None:
                raise FormatError(lineno, "duplicate solution line")
            if len(tok) != 5 or tok[1] != "td":
                raise FormatError(lineno, "expected 's td <#bags> <max-bag-size> <n>'")
            try:
                header = (int(tok[2]), int(tok[3]), int(tok[4]))
            except ValueError:
                raise FormatError(lineno, "non-integer values in solution line") from None
            continue
        if header is None:
            raise FormatError(lineno, "data before solution line")
        num_bags, max_bag, n = header
        if tok[0] == "b":
            if len(tok) < 2:
                raise FormatError(lineno, "bag line needs an id")
            try:
                bag_id = int(tok[1])
                verts = [int(t) for t in tok[2:]]
            except ValueError:
                raise FormatError(lineno, "non-integer token in bag line") from None
            if not (1 <= bag_id <= num_bags):
                raise FormatError(lineno, f"bag id {bag_id} out of range 1..{num_bags}")
            if bag_id in bags:
                raise FormatError(lineno, f"duplicate bag id {bag_id}")
            for v in verts:
                if not (1 <= v <= n):
                    raise FormatError(lineno, f"vertex {v} out of range 1..{n}")
            if len(set(verts)) != len(verts):
                raise FormatError(lineno, "repeated vertex in bag")
            bags[bag_id] = frozenset(verts)
            continue
        if len(tok) != 2:
            raise FormatError(lineno, f"expected tree edge '<i> <j>', got {line!r}")
        try:
            edges.append((int(tok[0]), int(tok[1])))
        except ValueError:
            raise FormatError(lineno, "non-integer node id in tree edge") from None
    if header is None:
        raise FormatError(1, "missing solution line")
    num_bags, max_bag, n = header
    if len(bags) != num_bags:
        raise FormatError(1, f"declared {num_bags} bags, found {len(bags)}")
    bag_list = [bags[i] for i in range(1, num_bags + 1)]
    actual_max = max((len(b) for b in bag_list), default=0)
    if actual_max != max_bag:
        raise FormatError(1, f"declared max bag size {max_bag}, actual {actual_max}")
    try:
        td = TreeDecomposition(bag_list, edges)
    except NotATreeDecomposition as exc:
        raise FormatError(1, str(exc)) from None
    return td, n


def write_td(td: TreeDecomposition, n: int, comment: str | None = None) -> str:
    lines = []
    if comment:
        for part in comment.splitlines():
            lines.append(f"c {part}")
    max_bag = max(len(b) for b in td.bags)
    lines.append(f"s td {td.num_nodes} {max_bag} {n}")
    for i in td.nodes():
        lines.append("b " + " ".join([str(i)] + [str(v) for v in sorted(td.bag(i))]))
    for i, j in sorted(td.tree_edges):
        lines.append(f"{i} {j}")
    return "\n".join(lines) + "\n"
