"""Ground-truth computations: exact size-constrained cuts and minimum k-sections.

The tree DP follows the classic knapsack-over-subtrees scheme; the
decomposition DP keeps one table per node mapping (cluster coloring,
black count) to the minimum number of cut edges.  Both reconstruct an
optimal black set deterministically (ascending scans everywhere) and
respect a hard memory guard (KSEC_MAX_MEM_MB).
"""

from __future__ import annotations

import os

import numpy as np

from .errors import (
    InvariantViolation,
    KOutOfRange,
    KsecError,
    MOutOfRange,
    ResourceLimit,
    TooLarge,
    WidthTooLarge,
)
from .graph import Cut, Graph, KSection, components
from .treedec import TreeDecomposition

INF = 1 << 28


def _mem_limit_bytes(mem_limit_mb: int | None) -> int:
    if mem_limit_mb is None:
        mem_limit_mb = int(os.environ.get("KSEC_MAX_MEM_MB", "2048"))
    return mem_limit_mb * (1 << 20)


def _minplus(a: np.ndarray, b: np.ndarray, cap: int) -> np.ndarray:
    """out[c] = min over i+j=c of a[i]+b[j], truncated to counts 0..cap."""
    out_len = min(len(a) + len(b) - 1, cap + 1)
    out = np.full(out_len, INF, dtype=np.int32)
    if len(b) > len(a):
        a, b = b, a
    for j in range(min(len(b), out_len)):
        bj = int(b[j])
        if bj >= INF:
            continue
        hi = min(len(a), out_len - j)
        np.minimum(out[j : j + hi], a[:hi] + bj, out=out[j : j + hi])
    np.minimum(out, INF, out=out)
    return out


# --- Trees ------------------------------------------------------------------

class _TreeTables:
    """Per-vertex DP tables for one component, rooted at its smallest id."""

    def __init__(self, g: Graph, comp: list[int], cap: int):
        self.g = g
        self.cap = cap
        self.root = comp[0]
        parent = {self.root: 0}
        order = [self.root]
        for u in order:
            for w in g.adj[u]:
                if w not in parent:
                    parent[w] = u
                    order.append(w)
        self.order = order
        self.children = {v: [w for w in g.adj[v] if parent.get(w) == v] for v in comp}
        self.table: dict[int, np.ndarray] = {}

    def base(self) -> np.ndarray:
        t = np.full((2, min(1, self.cap) + 1), INF, dtype=np.int32)
        t[0][0] = 0
        if self.cap >= 1:
            t[1][1] = 0
        return t

    def child_best(self, u: int) -> np.ndarray:
        """min over the child's own color, paying 1 when colors differ."""
        du = self.table[u]
        out = np.empty_like(du)
        np.minimum(du[0], du[1] + 1, out=out[0])
        np.minimum(du[1], du[0] + 1, out=out[1])
        np.minimum(out, INF, out=out)
        return out

    def accumulate(self, v: int) -> list[np.ndarray]:
        accs = [self.base()]
        for u in self.children[v]:
            best = self.child_best(u)
            acc = accs[-1]
            accs.append(
                np.stack(
                    [_minplus(acc[0], best[0], self.cap), _minplus(acc[1], best[1], self.cap)]
                )
            )
        return accs

    def run(self, mem_limit: int) -> np.ndarray:
        used = 0
        for v in reversed(self.order):
            self.table[v] = self.accumulate(v)[-1]
            used += self.table[v].nbytes
            if used > mem_limit:
                raise ResourceLimit(
                    f"tree DP tables exceed memory guard ({used >> 20} MB); "
                    "raise KSEC_MAX_MEM_MB"
                )
        root_t = self.table[self.root]
        comp_table = np.minimum(root_t[0], root_t[1])
        return comp_table

    def trace(self, count: int, color: dict[int, int]) -> None:
        """Assign colors for the whole component given the root's black count."""
        root_t = self.table[self.root]
        if count < root_t.shape[1] and root_t[0][count] <= root_t[1][count]:
            state = (self.root, 0, count)
        else:
            state = (self.root, 1, count)
        stack = [state]
        while stack:
            v, s, c = stack.pop()
            color[v] = s
            accs = self.accumulate(v)
            for idx in range(len(self.children[v]) - 1, -1, -1):
                u = self.children[v][idx]
                best = self.child_best(u)
                prev, cur = accs[idx], accs[idx + 1]
                target = int(cur[s][c])
                found = False
                for cu in range(min(len(best[s]), c + 1)):
                    rest = c - cu
                    if rest < len(prev[s]) and int(prev[s][rest]) + int(best[s][cu]) == target:
                        du = self.table[u]
                        su = s if (cu < du.shape[1] and int(du[s][cu]) == int(best[s][cu])) else 1 - s
                        stack.append((u, su, cu))
                        c = rest
                        found = True
                        break
                if not found:
                    raise InvariantViolation("tree DP trace failed to split a count")
            if c != (1 if s else 0):
                raise InvariantViolation("tree DP trace ended on a bad count")


def dp_min_size_cut_tree(
    forest: Graph, m: int, mem_limit_mb: int | None = None
) -> tuple[Cut, int]:
    """Exact minimum-width cut with |B| = m in a forest; O(n*m) time."""
    n = forest.n
    if not (0 <= m <= n):
        raise MOutOfRange(f"m={m} not in 0..{n}")
    if len(forest.edges) != n - len(components(forest)):
        raise KsecError("dp_min_size_cut_tree requires a forest")
    mem_limit = _mem_limit_bytes(mem_limit_mb)

    comps = [sorted(c) for c in components(forest)]
    dps = []
    tables = []
    for comp in comps:
        t = _TreeTables(forest, comp, min(m, len(comp)))
        dps.append(t.run(mem_limit))
        tables.append(t)

    # knapsack across components
    accs = [np.zeros(1, dtype=np.int32)]
    for d in dps:
        accs.append(_minplus(accs[-1], d, m))
    total = accs[-1]
    if m >= len(total) or total[m] >= INF:
        raise InvariantViolation("no cut of the requested size exists")
    width = int(total[m])

    color: dict[int, int] = {}
    c = m
    for idx in range(len(comps) - 1, -1, -1):
        prev, cur = accs[idx], accs[idx + 1]
        target = int(cur[c])
        for cu in range(min(len(dps[idx]), c + 1)):
            rest = c - cu
            if rest < len(prev) and int(prev[rest]) + int(dps[idx][cu]) == target:
                tables[idx].trace(cu, color)
                c = rest
                break
        else:
            raise InvariantViolation("component knapsack trace failed")
    black = {v for v, s in color.items() if s == 1}
    cut = Cut.from_black(forest, black)
    if len(cut.black) != m or cut.width != width:
        raise InvariantViolation("tree DP reconstruction mismatch")
    return cut, width


# --- Tree decompositions ----------------------------------------------------

def _root_td(td: TreeDecomposition) -> tuple[list[int], list[int]]:
    parent = [0] * (td.num_nodes + 1)
    order = [1]
    seen = [False] * (td.num_nodes + 1)
    seen[1] = True
    for u in order:
        for w in td.tree_adj[u]:
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                order.append(w)
    return order, parent


class _TDTables:
    def __init__(self, g: Graph, td: TreeDecomposition, cap: int, mem_limit: int):
        self.g = g
        self.td = td
        self.cap = cap
        self.mem_limit = mem_limit
        self.order, self.parent = _root_td(td)
        self.children = {
            i: [w for w in td.tree_adj[i] if self.parent[w] == i] for i in td.nodes()
        }
        self.bag_list = {i: sorted(td.bag(i)) for i in td.nodes()}
        self.pos = {i: {v: p for p, v in enumerate(self.bag_list[i])} for i in td.nodes()}
        # each edge is charged to the smallest node whose cluster contains it
        self.cost_edges: dict[int, list[tuple[int, int]]] = {i: [] for i in td.nodes()}
        for u, v in sorted(g.edges):
            home = None
            for i in td.nodes():
                if u in td.bag(i) and v in td.bag(i):
                    home = i
                    break
            if home is None:
                raise KsecError(f"edge ({u},{v}) not covered by any cluster (T2 fails)")
            self.cost_edges[home].append((u, v))
        self.table: dict[int, list[np.ndarray]] = {}
        self.used_bytes = 0

    def base(self, i: int) -> list[np.ndarray]:
        bag = self.bag_list[i]
        pos = self.pos[i]
        tabs = []
        for mask in range(1 << len(bag)):
            blacks = bin(mask).count("1")
            cost = 0
            for u, v in self.cost_edges[i]:
                if ((mask >> pos[u]) & 1) != ((mask >> pos[v]) & 1):
                    cost += 1
            t = np.full(min(blacks, self.cap) + 1, INF, dtype=np.int32)
            if blacks <= self.cap:
                t[blacks] = cost
            tabs.append(t)
        return tabs

    def reduce_child(self, i: int, j: int) -> dict[int, np.ndarray]:
        """Group the child table by the coloring of the shared vertices.

        Keys are masks over bag(i) positions restricted to shared
        vertices; red[key][c] = best child entry with c black vertices
        counted below j but outside the shared set.
        """
        shared = [v for v in self.bag_list[j] if v in self.pos[i]]
        tabs = self.table[j]
        max_len = max(len(t) for t in tabs)
        red: dict[int, np.ndarray] = {}
        for mask_j, t in enumerate(tabs):
            key = 0
            s_count = 0
            for v in shared:
                if (mask_j >> self.pos[j][v]) & 1:
                    key |= 1 << self.pos[i][v]
                    s_count += 1
            arr = red.get(key)
            if arr is None:
                arr = np.full(max_len, INF, dtype=np.int32)
                red[key] = arr
            lo = s_count
            ln = len(t) - lo
            if ln > 0:
                np.minimum(arr[:ln], t[lo:], out=arr[:ln])
        return red

    def run(self) -> list[np.ndarray]:
        for i in reversed(self.order):
            tabs = self.base(i)
            bag_mask_all = (1 << len(self.bag_list[i])) - 1
            for j in self.children[i]:
                red = self.reduce_child(i, j)
                shared_mask = 0
                for v in self.bag_list[j]:
                    if v in self.pos[i]:
                        shared_mask |= 1 << self.pos[i][v]
                empty = np.full(1, INF, dtype=np.int32)
                tabs = [
                    _minplus(tabs[mask], red.get(mask & shared_mask, empty), self.cap)
                    for mask in range(bag_mask_all + 1)
                ]
            self.table[i] = tabs
            self.used_bytes += sum(t.nbytes for t in tabs)
            if self.used_bytes > self.mem_limit:
                raise ResourceLimit(
                    f"decomposition DP tables exceed memory guard "
                    f"({self.used_bytes >> 20} MB); raise KSEC_MAX_MEM_MB"
                )
        return self.table[self.order[0]]

    def trace(self, mask0: int, count: int) -> dict[int, int]:
        color: dict[int, int] = {}
        stack = [(self.order[0], mask0, count)]
        while stack:
            i, mask, c = stack.pop()
            for v, p in self.pos[i].items():
                color[v] = (mask >> p) & 1
            # rebuild the accumulation sequence for node i
            accs = [self.base(i)[mask]]
            reds = []
            for j in self.children[i]:
                red = self.reduce_child(i, j)
                shared_mask = 0
                for v in self.bag_list[j]:
                    if v in self.pos[i]:
                        shared_mask |= 1 << self.pos[i][v]
                empty = np.full(1, INF, dtype=np.int32)
                arr = red.get(mask & shared_mask, empty)
                reds.append((j, shared_mask, arr))
                accs.append(_minplus(accs[-1], arr, self.cap))
            for idx in range(len(self.children[i]) - 1, -1, -1):
                j, shared_mask, arr = reds[idx]
                prev, cur = accs[idx], accs[idx + 1]
                target = int(cur[c])
                found = False
                for ct in range(min(len(arr), c + 1)):
                    rest = c - ct
                    if rest < len(prev) and int(prev[rest]) + int(arr[ct]) == target:
                        key = mask & shared_mask
                        mask_j, c_j = self._find_child_state(i, j, key, int(arr[ct]), ct)
                        stack.append((j, mask_j, c_j))
                        c = rest
                        found = True
                        break
                if not found:
                    raise InvariantViolation("decomposition DP trace failed on a count")
            blacks = bin(mask).count("1")
            if c != blacks:
                raise InvariantViolation("decomposition DP trace ended on a bad count")
        return color

    def _find_child_state(self, i: int, j: int, key: int, want: int, ct: int) -> tuple[int, int]:
        shared = [v for v in self.bag_list[j] if v in self.pos[i]]
        for mask_j, t in enumerate(self.table[j]):
            k = 0
            s_count = 0
            for v in shared:
                if (mask_j >> self.pos[j][v]) & 1:
                    k |= 1 << self.pos[i][v]
                    s_count += 1
            if k != key:
                continue
            c_j = ct + s_count
            if c_j < len(t) and int(t[c_j]) == want:
                return mask_j, c_j
        raise InvariantViolation("decomposition DP trace failed on a cluster coloring")


def dp_min_size_cut_td(
    g: Graph,
    td: TreeDecomposition,
    m: int,
    max_width: int = 12,
    mem_limit_mb: int | None = None,
) -> tuple[Cut, int]:
    """Exact minimum-width cut with |B| = m, via DP over the decomposition.

    Exponential in the decomposition width; refuses widths above
    ``max_width``.
    """
    n = g.n
    if not (0 <= m <= n):
        raise MOutOfRange(f"m={m} not in 0..{n}")
    if td.width > max_width:
        raise WidthTooLarge(f"decomposition width {td.width} exceeds limit {max_width}")
    covered = set()
    for b in td.bags:
        covered |= b
    if covered != set(g.vertices()):
        raise KsecError("clusters do not cover the vertex set (T1 fails)")

    tables = _TDTables(g, td, m, _mem_limit_bytes(mem_limit_mb))
    root_tabs = tables.run()
    best_mask, best = None, INF
    for mask, t in enumerate(root_tabs):
        if m < len(t) and int(t[m]) < best:
            best_mask, best = mask, int(t[m])
    if best_mask is None or best >= INF:
        raise InvariantViolation("no cut of the requested size exists")
    color = tables.trace(best_mask, m)
    black = {v for v, s in color.items() if s == 1}
    cut = Cut.from_black(g, black)
    if len(cut.black) != m or cut.width != best:
        raise InvariantViolation("decomposition DP reconstruction mismatch")
    return cut, best


# --- Brute force ------------------------------------------------------------

def balanced_sizes(n: int, k: int) -> list[int]:
    """Part sizes of a k-section: (n mod k) ceilings first, then floors."""
    q, r = divmod(n, k)
    return [q + 1] * r + [q] * (k - r)


def brute_min_ksection(g: Graph, k: int, limit: int = 14) -> tuple[KSection, int]:
    """Exact MinSec(k, g) by enumerating balanced partitions (n <= limit)."""
    if g.n > limit:
        raise TooLarge(f"n={g.n} exceeds enumeration limit {limit}")
    if k < 1:
        raise KOutOfRange(f"k={k} must be >= 1")
    n = g.n
    quotas = balanced_sizes(n, k)
    adj_sets = [set(g.adj[v]) if v <= n else set() for v in range(n + 1)]
    best_width = INF
    best_assign: list[int] | None = None
    assign = [0] * (n + 1)
    remaining = quotas[:]

    def rec(v: int, width: int) -> None:
        nonlocal best_width, best_assign
        if width >= best_width:
            return
        if v > n:
            best_width = width
            best_assign = assign[1:].copy()
            return
        opened_quota = set()
        for p in range(k):
            if remaining[p] == 0:
                continue
            if remaining[p] == quotas[p]:
                if quotas[p] in opened_quota:
                    continue  # symmetric to an earlier still-empty part
                opened_quota.add(quotas[p])
            extra = sum(1 for u in adj_sets[v] if u < v and assign[u] != p)
            remaining[p] -= 1
            assign[v] = p
            rec(v + 1, width + extra)
            remaining[p] += 1
        assign[v] = 0

    rec(1, 0)
    if best_assign is None:
        raise InvariantViolation("k-section enumeration found nothing")
    parts = [[] for _ in range(k)]
    for v in range(1, n + 1):
        parts[best_assign[v - 1]].append(v)
    sec = KSection.from_parts(g, parts)
    if sec.width != best_width:
        raise InvariantViolation("k-section enumeration width mismatch")
    return sec, best_width
