"""Exact proper connection number: bounds, decision search and a brute-force oracle."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .colorpath import (
    EdgeColoring,
    _failing_pair,
    _optimistic_failing_pair,
    brute_proper_connected,
    is_proper_connected,
)
from .decomp import bridge_fan
from .errors import GraphError, WitnessError
from .graph import Graph, is_complete, is_connected

DEFAULT_BUDGET = 26

ORACLE_MAX_N = 7
ORACLE_MAX_M = 15


@dataclass(frozen=True)
class PcBounds:
    lower: int
    upper: int
    lower_reason: str
    upper_reason: str

    def __post_init__(self):
        if not 1 <= self.lower <= self.upper:
            raise ValueError(f"inconsistent bounds {self.lower}..{self.upper}")


def _require_connected(G: Graph) -> None:
    if G.n < 2 or not is_connected(G):
        raise GraphError("proper connection number needs a connected graph with n >= 2")


def pc_lower_bound(G: Graph) -> tuple[int, str]:
    _require_connected(G)
    if is_complete(G):
        return 1, "complete"
    fan = bridge_fan(G)
    if fan > 2:
        return fan, "bridge-fan"
    return 2, "noncomplete"


# -- spanning-tree upper bound ---------------------------------------------------


def _bfs_tree(G: Graph, root: int) -> list[int]:
    seen = {root}
    out = []
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y, e in G.inc[x]:
            if y not in seen:
                seen.add(y)
                out.append(e)
                queue.append(y)
    return out


def _dfs_tree(G: Graph, root: int) -> list[int]:
    seen = {root}
    out = []
    stack = [(root, iter(G.inc[root]))]
    while stack:
        x, it = stack[-1]
        for y, e in it:
            if y not in seen:
                seen.add(y)
                out.append(e)
                stack.append((y, iter(G.inc[y])))
                break
        else:
            stack.pop()
    return out


def _greedy_tree(G: Graph) -> list[int]:
    """Grow a tree attaching each new vertex to the tree vertex of least tree degree."""
    root = min(range(G.n), key=lambda v: (len(G.adj[v]), v))
    in_tree = {root}
    tdeg = [0] * G.n
    out = []
    while len(in_tree) < G.n:
        best = None
        for x in sorted(in_tree):
            for y, e in G.inc[x]:
                if y in in_tree:
                    continue
                # prefer low tree degree at x, then new vertices with few outside options
                key = (tdeg[x], len(G.adj[y] - in_tree), e)
                if best is None or key < best[0]:
                    best = (key, x, y, e)
        _, x, y, e = best
        in_tree.add(y)
        tdeg[x] += 1
        tdeg[y] += 1
        out.append(e)
    return out


def _tree_max_degree(G: Graph, tree: list[int]) -> int:
    deg = [0] * G.n
    for e in tree:
        u, v = G.edges[e]
        deg[u] += 1
        deg[v] += 1
    return max(deg)


def color_tree(G: Graph, tree: list[int]) -> list[int]:
    """Proper edge colouring of a spanning tree with Δ(T) colours; other edges get 1."""
    tree_set = set(tree)
    cols = [1] * G.m
    root = 0
    seen = {root}
    queue = deque([(root, 0)])
    while queue:
        x, pc = queue.popleft()
        nxt = 1
        for y, e in G.inc[x]:
            if e not in tree_set or y in seen:
                continue
            if nxt == pc:
                nxt += 1
            cols[e] = nxt
            seen.add(y)
            queue.append((y, nxt))
            nxt += 1
    return cols


def spanning_tree_sample(G: Graph) -> list[list[int]]:
    trees = [_greedy_tree(G)]
    for r in range(G.n):
        trees.append(_dfs_tree(G, r))
        trees.append(_bfs_tree(G, r))
    return trees


def pc_upper_via_spanning_tree(G: Graph) -> tuple[int, EdgeColoring]:
    _require_connected(G)
    best = min(spanning_tree_sample(G), key=lambda t: _tree_max_degree(G, t))
    k = _tree_max_degree(G, best)
    witness = EdgeColoring.of(G, color_tree(G, best), k)
    if not is_proper_connected(G, witness):
        raise WitnessError("spanning-tree colouring failed verification")
    return k, witness


# -- decision search --------------------------------------------------------------


def search_order(G: Graph) -> list[int]:
    """Edges in BFS order from vertex 0, so every prefix is connected."""
    order: list[int] = []
    done = set()
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y, e in G.inc[x]:
            if e not in done:
                done.add(e)
                order.append(e)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return order


@dataclass
class Decision:
    status: str  # found | absent | undecided
    coloring: EdgeColoring | None = None
    inspected: int = 0
    nodes: int = 0


@dataclass
class _Search:
    G: Graph
    k: int
    order: list[int]
    cols: list[int] = field(default_factory=list)
    inspected: int = 0
    nodes: int = 0
    hint: tuple[int, int] | None = None
    prune: bool = True


def _rec(st: _Search, pos: int, used: int) -> bool:
    st.nodes += 1
    G, order = st.G, st.order
    if pos == len(order):
        st.inspected += 1
        bad = _failing_pair(G, st.cols, st.hint)
        if bad is None:
            return True
        st.hint = bad
        return False
    e = order[pos]
    top = min(st.k, used + 1)
    for color in range(1, top + 1):
        st.cols[e] = color
        if st.prune and pos + 1 < len(order):
            src = st.hint[0] if st.hint else None
            bad = _optimistic_failing_pair(G, st.cols, st.k + 1, src)
            if bad is not None:
                st.hint = bad
                continue
        if _rec(st, pos + 1, max(used, color)):
            return True
    st.cols[e] = 0
    return False


def decide_pc_le_k(G: Graph, k: int, budget: int = DEFAULT_BUDGET, *, prune: bool = True) -> Decision:
    """Search for a proper connection colouring with at most ``k`` colours.

    Colourings are enumerated as restricted-growth sequences along
    :func:`search_order`, so each colour partition is visited once. The first
    hit is the lexicographically smallest valid sequence in that order.
    """
    _require_connected(G)
    if k < 1:
        raise GraphError("k must be positive")
    if k == 1:
        # one colour: only single-edge paths are proper
        if is_complete(G):
            return Decision("found", EdgeColoring.of(G, [1] * G.m, 1), 1, 1)
        return Decision("absent", None, 0, 0)
    if G.m > budget:
        return Decision("undecided")
    st = _Search(G, k, search_order(G), [0] * G.m, prune=prune)
    if _rec(st, 0, 0):
        witness = EdgeColoring.of(G, st.cols, k)
        if not is_proper_connected(G, witness):
            raise WitnessError("search returned an unverified colouring")
        return Decision("found", witness, st.inspected, st.nodes)
    return Decision("absent", None, st.inspected, st.nodes)


@dataclass(frozen=True)
class PcResult:
    status: str  # exact | undecided
    bounds: PcBounds
    witness: EdgeColoring | None
    pc: int | None = None


def pc_exact(G: Graph, budget: int = DEFAULT_BUDGET) -> PcResult:
    lo, lo_reason = pc_lower_bound(G)
    hi, tree_witness = pc_upper_via_spanning_tree(G)
    if lo >= hi:
        return PcResult("exact", PcBounds(hi, hi, lo_reason, "spanning-tree"), tree_witness, hi)
    for k in range(lo, hi):
        d = decide_pc_le_k(G, k, budget)
        if d.status == "found":
            return PcResult("exact", PcBounds(k, k, lo_reason if k == lo else "search", "search"),
                            d.coloring, k)
        if d.status == "undecided":
            return PcResult("undecided", PcBounds(k, hi, "search" if k > lo else lo_reason,
                                                  "spanning-tree"), tree_witness)
    return PcResult("exact", PcBounds(hi, hi, "search", "spanning-tree"), tree_witness, hi)


def oracle_pc(G: Graph) -> int:
    """Ground-truth pc by trying every colouring with simple-path enumeration."""
    if G.n > ORACLE_MAX_N or G.m > ORACLE_MAX_M:
        raise GraphError(f"oracle limited to n <= {ORACLE_MAX_N}, m <= {ORACLE_MAX_M}")
    _require_connected(G)
    for k in range(1, G.m + 1):
        for cols in itertools.product(range(1, k + 1), repeat=G.m):
            if brute_proper_connected(G, cols):
                return k
    raise AssertionError("unreachable: m colours always suffice")
