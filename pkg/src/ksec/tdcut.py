"""Cuts in graphs driven by a tree decomposition.

Mirrors the tree machinery: the heaviest path of the decomposition
plays the role of a longest path, the vertex set splits into R (covered
by path clusters) and the per-node remainders S_i, and a cyclic
labeling places each R_i ∪ S_i block consecutively with R_i last.  The
r-preserving cut peels off exactly m vertices while the relative
heaviest-path weight of the remainder never drops.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from . import oracle
from .errors import InvariantViolation, MOutOfRange, RedundantDecomposition
from .graph import Cut, Graph, max_degree
from .treedec import (
    HeaviestPathResult,
    TreeDecomposition,
    heaviest_path,
    induced,
    make_nonredundant,
    relabel_clusters,
)


@dataclass(frozen=True)
class TDPLabeling:
    """Arrays of the decomposition labeling (A_L, A_V, A_R, A_P, L_P, d_1)."""

    n: int
    a_l: tuple  # vertex -> label
    a_v: tuple  # label -> vertex
    a_r: tuple  # vertex -> in R?
    a_p: tuple  # vertex -> path node
    l_p: tuple  # path nodes in order
    i0: int
    j0: int
    r_of: dict  # path node -> sorted tuple R_i
    s_of: dict  # path node -> sorted tuple S_i
    d1: tuple  # label -> number of R-labels among labels < it
    r_size: int

    def label(self, vertex: int) -> int:
        return self.a_l[vertex]

    def vertex(self, label: int) -> int:
        return self.a_v[(label - 1) % self.n + 1]


@dataclass(frozen=True)
class RCutTrace:
    case_tag: str
    m: int
    r: Fraction
    t: int
    anchor: int | None = None
    floor_rm: int | None = None
    node: int | None = None
    m_tilde: int | None = None
    b_side: frozenset | None = None
    v_tilde: frozenset | None = None
    r_tilde: Fraction | None = None
    inner_width: int | None = None
    outer_width: int | None = None
    normalized_td: TreeDecomposition | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        out = {
            "case_tag": self.case_tag,
            "m": self.m,
            "r": [self.r.numerator, self.r.denominator],
            "t": self.t,
            "anchor": self.anchor,
            "floor_rm": self.floor_rm,
            "node": self.node,
            "m_tilde": self.m_tilde,
            "b_side": sorted(self.b_side) if self.b_side is not None else None,
            "v_tilde": sorted(self.v_tilde) if self.v_tilde is not None else None,
            "r_tilde": [self.r_tilde.numerator, self.r_tilde.denominator]
            if self.r_tilde is not None
            else None,
            "inner_width": self.inner_width,
            "outer_width": self.outer_width,
        }
        return out


def td_p_labeling(g: Graph, td: TreeDecomposition, path: HeaviestPathResult) -> TDPLabeling:
    """Labeling of g along a path of a nonredundant decomposition.

    Blocks follow the path; within the block of node i the S_i vertices
    come first and the R_i vertices take the largest labels.  Raises
    ``RedundantDecomposition`` when some R_i is empty, which cannot
    happen after ``make_nonredundant``.
    """
    n = g.n
    path_nodes = tuple(path.path)
    path_edges = {frozenset(e) for e in zip(path_nodes, path_nodes[1:])}

    # component of T - E_P containing each node
    comp_of = {}
    for i in path_nodes:
        comp_of[i] = i
        queue = deque([i])
        while queue:
            u = queue.popleft()
            for w in td.tree_adj[u]:
                if w in comp_of or frozenset((u, w)) in path_edges:
                    continue
                comp_of[w] = i
                queue.append(w)
    if len(comp_of) != td.num_nodes:
        raise InvariantViolation("path does not lie in the decomposition tree")

    in_r = [False] * (n + 1)
    path_node_of = [0] * (n + 1)
    r_of: dict[int, list[int]] = {i: [] for i in path_nodes}
    for i in path_nodes:
        for v in sorted(td.bag(i)):
            if not in_r[v]:
                in_r[v] = True
                path_node_of[v] = i
                r_of[i].append(v)

    s_of: dict[int, set] = {i: set() for i in path_nodes}
    for node in td.nodes():
        anchor = comp_of[node]
        for v in td.bag(node):
            if not in_r[v]:
                s_of[anchor].add(v)
                path_node_of[v] = anchor

    for i in path_nodes:
        if not r_of[i]:
            raise RedundantDecomposition(f"cluster block of node {i} adds no new vertex")

    if sum(len(r_of[i]) + len(s_of[i]) for i in path_nodes) != n:
        raise InvariantViolation("labeling blocks do not partition the vertex set")

    a_l = [0] * (n + 1)
    a_v = [0] * (n + 1)
    next_label = 1
    for i in path_nodes:
        for v in sorted(s_of[i]) + r_of[i]:
            a_l[v] = next_label
            a_v[next_label] = v
            next_label += 1

    d1 = [0] * (n + 2)
    seen_r = 0
    for lbl in range(1, n + 1):
        d1[lbl] = seen_r
        if in_r[a_v[lbl]]:
            seen_r += 1
    d1[n + 1] = seen_r

    return TDPLabeling(
        n=n,
        a_l=tuple(a_l),
        a_v=tuple(a_v),
        a_r=tuple(in_r),
        a_p=tuple(path_node_of),
        l_p=path_nodes,
        i0=path_nodes[0],
        j0=path_nodes[-1],
        r_of={i: tuple(r_of[i]) for i in path_nodes},
        s_of={i: tuple(sorted(s_of[i])) for i in path_nodes},
        d1=tuple(d1),
        r_size=seen_r,
    )


def d_r(lab: TDPLabeling, x: int, y: int) -> int:
    """Count R-vertices between labels x and y, excluding y (cyclic)."""
    n = lab.n
    x, y = (x - 1) % n + 1, (y - 1) % n + 1
    if x <= y:
        return lab.d1[y] - lab.d1[x]
    return lab.r_size - lab.d1[x] + lab.d1[y]


def find_anchor_td(lab: TDPLabeling, m: int) -> int:
    """Smallest label v with d_R(v, v+m) = floor(r*m) and v or v+m in R."""
    n = lab.n
    target = (lab.r_size * m) // n
    for v in range(1, n + 1):
        vm = (v + m - 1) % n + 1
        if lab.a_r[lab.a_v[v]] or lab.a_r[lab.a_v[vm]]:
            if d_r(lab, v, v + m) == target:
                return v
    raise InvariantViolation(f"no anchor for m={m}; labeling corrupt")


def approximate_cut_td(g: Graph, td: TreeDecomposition, m: int) -> Cut:
    """Approximate m-cut with width <= t*Δ(g), t-1 the decomposition width.

    Deletes all edges around one well-chosen cluster and reassembles the
    resulting disjoint parts greedily.
    """
    n = g.n
    if not (1 <= m <= 2 * n):
        raise MOutOfRange(f"m={m} not in 1..{2 * n}")
    if m >= n:
        return Cut.from_black(g, set(g.vertices()))

    order = [1]
    parent = [0] * (td.num_nodes + 1)
    depth = [0] * (td.num_nodes + 1)
    seen = [False] * (td.num_nodes + 1)
    seen[1] = True
    for u in order:
        for w in td.tree_adj[u]:
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                depth[w] = depth[u] + 1
                order.append(w)

    top = {}
    for i in td.nodes():
        for v in td.bag(i):
            if v not in top or depth[i] < depth[top[v]]:
                top[v] = i
    if len(top) != n:
        raise InvariantViolation("clusters do not cover the vertex set (T1 fails)")

    by_top: dict[int, list[int]] = {}
    for v, i in top.items():
        by_top.setdefault(i, []).append(v)
    d_size = [0] * (td.num_nodes + 1)
    for i in reversed(order):
        d_size[i] += len(by_top.get(i, ()))
        if parent[i]:
            d_size[parent[i]] += d_size[i]

    x = 1
    while True:
        down = [w for w in td.tree_adj[x] if parent[w] == x and d_size[w] > m]
        if not down:
            break
        x = min(down)

    parts: list[list[int]] = []
    for y in sorted(w for w in td.tree_adj[x] if parent[w] == x):
        nodes = [y]
        for u in nodes:
            nodes.extend(w for w in td.tree_adj[u] if parent[w] == u)
        part: list[int] = []
        for node in nodes:
            part.extend(by_top.get(node, ()))
        parts.append(sorted(part))
    parts.extend([v] for v in sorted(td.bag(x)))

    black: set[int] = set()
    for part in parts:
        if m <= 2 * len(part) and len(part) <= m:
            black = set(part)
            break
    else:
        for part in parts:
            if 2 * len(black) >= m:
                break
            black.update(part)
    if not (m <= 2 * len(black) and len(black) <= m):
        raise InvariantViolation("approximate cluster cut missed its size window")
    return Cut.from_black(g, black)


def exact_cut_bounded_td(
    g: Graph, td: TreeDecomposition, m: int, max_width: int = 12
) -> Cut:
    """Minimum-width cut with |B| = m; meets the (t/2)(log² + 9log + 8)Δ bound."""
    if not (1 <= m <= g.n):
        raise MOutOfRange(f"m={m} not in 1..{g.n}")
    cut, _ = oracle.dp_min_size_cut_td(g, td, m, max_width=max_width)
    return cut


def _induced_local(
    td: TreeDecomposition, vertices: list[int]
) -> tuple[TreeDecomposition, dict]:
    """Induced decomposition with clusters renamed to 1..|vertices|."""
    new_of = {old: i + 1 for i, old in enumerate(vertices)}
    return relabel_clusters(induced(td, vertices), new_of), new_of


def _subgraph_minus_cluster_edges(
    g: Graph, vertices: list[int], bag: frozenset
) -> Graph:
    new_of = {old: i + 1 for i, old in enumerate(vertices)}
    edges = [
        (new_of[u], new_of[v])
        for (u, v) in g.edges
        if u in new_of and v in new_of and u not in bag and v not in bag
    ]
    return Graph(len(vertices), edges)


def r_preserving_cut(
    g: Graph, td: TreeDecomposition, m: int, max_width: int = 12, check: bool = False
) -> tuple[Cut, RCutTrace]:
    """Cut with |B| = m whose remainder keeps the relative path weight.

    Guarantees, with r = r(T,X) of the normalized input and t-1 its
    width: |B| = m, width <= (t/2)(log2(1/r)^2 + 11 log2(1/r) + 24)Δ(g),
    and r of the decomposition induced by G[W] is at least r.

    ``check=True`` additionally validates the spliced inner decomposition
    against the inner graph (slow; meant for tests).
    """
    n = g.n
    if not (1 <= m <= n - 1):
        raise MOutOfRange(f"m={m} not in 1..{n - 1}")
    td0 = make_nonredundant(td)
    t = td0.width + 1
    hp = heaviest_path(td0, n)
    r = hp.relative_weight
    lab = td_p_labeling(g, td0, hp)
    floor_rm = (lab.r_size * m) // n
    v = find_anchor_td(lab, m)
    m_vertices = frozenset(lab.a_v[(v - 1 + i) % n + 1] for i in range(m))
    v_in_r = lab.a_r[lab.a_v[v]]
    vm_vertex = lab.vertex(v + m)
    vm_in_r = lab.a_r[vm_vertex]

    base = dict(m=m, r=r, t=t, anchor=v, floor_rm=floor_rm, normalized_td=td0)
    if v_in_r and vm_in_r:
        return Cut.from_black(g, m_vertices), RCutTrace(case_tag="Case1", **base)
    if v_in_r and lab.a_r[lab.vertex(v + m - 1)]:
        return Cut.from_black(g, m_vertices), RCutTrace(
            case_tag="Case2a", node=lab.a_p[vm_vertex], **base
        )

    if v_in_r:
        split_node = lab.a_p[vm_vertex]  # path node of v+m, which lies in S
        case = "Case2b"
    else:
        split_node = lab.a_p[lab.a_v[v]]  # path node of v, which lies in S
        case = "Case3"
    s_set = set(lab.s_of[split_node])
    m_tilde = 2 * len(s_set & m_vertices)
    if not (2 <= m_tilde <= 2 * m):
        raise InvariantViolation(f"{case}: m-tilde {m_tilde} out of range")

    s_sorted = sorted(s_set)
    sub_s, _ = _induced_local_graph(g, s_sorted)
    td_s, _ = _induced_local(td0, s_sorted)
    local_cut = approximate_cut_td(sub_s, td_s, m_tilde)
    b_side = frozenset(s_sorted[u - 1] for u in local_cut.black)

    v_tilde = frozenset((m_vertices - s_set) | b_side)
    if not (m <= len(v_tilde) <= 2 * m):
        raise InvariantViolation(f"{case}: inner vertex set size {len(v_tilde)}")

    bag = td0.bag(split_node)
    vt_sorted = sorted(v_tilde)
    g_tilde = _subgraph_minus_cluster_edges(g, vt_sorted, bag)
    new_of = {old: i + 1 for i, old in enumerate(vt_sorted)}
    b_local = {new_of[u] for u in b_side}
    if any((u in b_local) != (w in b_local) for (u, w) in g_tilde.edges):
        raise InvariantViolation(f"{case}: split sides are still connected")

    glued = _glue_decompositions(td0, vt_sorted, new_of, b_local, lab.j0)
    if glued.width > t - 1:
        raise InvariantViolation(f"{case}: glued decomposition too wide")
    if check:
        from .treedec import validate

        if not validate(glued, g_tilde):
            raise InvariantViolation(f"{case}: glued decomposition invalid")
    r_tilde = heaviest_path(glued, len(vt_sorted)).relative_weight
    if 2 * r_tilde < r:
        raise InvariantViolation(f"{case}: glued decomposition too light ({r_tilde} < {r}/2)")
    glued_small = make_nonredundant(glued)
    inner_cut, inner_width = oracle.dp_min_size_cut_td(
        g_tilde, glued_small, m, max_width=max_width
    )
    black = {vt_sorted[u - 1] for u in inner_cut.black}
    outer = sum(1 for (a, b) in g.edges if (a in v_tilde) != (b in v_tilde))
    if outer > 3 * t * max_degree(g):
        raise InvariantViolation(f"{case}: outer cut exceeds 3tΔ")
    return Cut.from_black(g, black), RCutTrace(
        case_tag=case,
        node=split_node,
        m_tilde=m_tilde,
        b_side=b_side,
        v_tilde=v_tilde,
        r_tilde=r_tilde,
        inner_width=inner_width,
        outer_width=outer,
        **base,
    )


def _induced_local_graph(g: Graph, vertices: list[int]) -> tuple[Graph, dict]:
    new_of = {old: i + 1 for i, old in enumerate(vertices)}
    edges = [
        (new_of[u], new_of[v]) for (u, v) in g.edges if u in new_of and v in new_of
    ]
    return Graph(len(vertices), edges), new_of


def _glue_decompositions(
    td0: TreeDecomposition,
    vt_sorted: list[int],
    new_of: dict,
    b_local: set,
    j0: int,
) -> TreeDecomposition:
    """Join induced decompositions of the two split sides by one edge.

    Copy 1 covers the non-split side, copy 2 the approximate-cut side;
    the new edge runs from the far path end j0 (copy 1) to the smallest
    copy-2 node with a nonempty cluster.
    """
    rest_set = {new_of[v] for v in vt_sorted} - b_local
    bags1 = []
    bags2 = []
    for bag in td0.bags:
        local = {new_of[v] for v in bag if v in new_of}
        bags1.append(frozenset(local & rest_set))
        bags2.append(frozenset(local & b_local))
    num = td0.num_nodes
    h0 = next(i for i, b in enumerate(bags2, start=1) if b)
    edges = list(td0.tree_edges)
    edges += [(i + num, j + num) for (i, j) in td0.tree_edges]
    edges.append((j0, h0 + num))
    return TreeDecomposition(bags1 + bags2, edges)
