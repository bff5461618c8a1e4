"""Maximum bipartite spanning subgraphs (max cut) and the bridge exchange move.

A selection is a vertex 2-colouring ``side``; its subgraph H keeps exactly
the edges whose ends differ. Among maximum selections we prefer connected H
with the smallest maximum degree of H's bridge-block tree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .decomp import bridge_block_tree, find_bridges, max_tree_degree
from .errors import GraphError
from .graph import Graph, is_connected

EXACT_MAX_N = 22


@dataclass(frozen=True)
class SpanningSelection:
    graph: Graph
    side: int  # bit v set  <=>  v in W

    @cached_property
    def kept(self) -> tuple[int, ...]:
        s = self.side
        return tuple(i for i, (u, v) in enumerate(self.graph.edges) if (s >> u ^ s >> v) & 1)

    @property
    def edge_count(self) -> int:
        return len(self.kept)

    @cached_property
    def H(self) -> Graph:
        # edges stay in index order, so H's edge i is G's edge kept[i]
        return self.graph.edge_subgraph(self.kept)

    @cached_property
    def connected(self) -> bool:
        return is_connected(self.H)

    @cached_property
    def tree_degree(self) -> int | None:
        """Δ(H*) for connected H, else None."""
        if not self.connected:
            return None
        return max_tree_degree(bridge_block_tree(self.H))

    def parts(self) -> tuple[list[int], list[int]]:
        n = self.graph.n
        return ([v for v in range(n) if not self.side >> v & 1],
                [v for v in range(n) if self.side >> v & 1])

    def h_bridges(self) -> list[int]:
        """Bridges of H as edge indices of G."""
        return sorted(self.kept[i] for i in find_bridges(self.H))


def _key(sel: SpanningSelection) -> tuple:
    td = sel.tree_degree
    return (-sel.edge_count, td if td is not None else 1 << 30, sel.side)


def cut_sizes(G: Graph) -> np.ndarray:
    """Cut size of every bipartition with vertex 0 on side U, indexed by side >> 1."""
    count = 1 << max(G.n - 1, 0)
    sides = np.arange(count, dtype=np.int64) << 1
    cuts = np.zeros(count, dtype=np.int32)
    for u, v in G.edges:
        cuts += ((sides >> u) ^ (sides >> v)) & 1
    return cuts


def max_bipartite_spanning_exact(G: Graph) -> SpanningSelection:
    if G.n > EXACT_MAX_N:
        raise GraphError(f"exact enumeration limited to n <= {EXACT_MAX_N}; use local search")
    if not is_connected(G):
        raise GraphError("graph must be connected")
    cuts = cut_sizes(G)
    best = int(cuts.max())
    # second pass: decompose only the edge-optimal selections
    cands = [SpanningSelection(G, int(i) << 1) for i in np.flatnonzero(cuts == best)]
    cands = [c for c in cands if c.connected]
    return min(cands, key=_key)


# -- Fact 1 ------------------------------------------------------------------------


@dataclass(frozen=True)
class ExchangeMove:
    """Drop the H-bridge ``bridge``; add ``added``; flip ``flip`` to the other side."""

    bridge: int
    added: tuple[int, int]
    flip: frozenset[int]
    crossing: int  # number of G-edges between the two sides of the bridge

    def subgraph_edges(self, S: SpanningSelection) -> list[int]:
        """Edge set of H - bridge + added (one edge more than H)."""
        return sorted((set(S.kept) - {self.bridge}) | set(self.added))

    def apply(self, S: SpanningSelection) -> SpanningSelection:
        mask = 0
        for v in self.flip:
            mask |= 1 << v
        return SpanningSelection(S.graph, S.side ^ mask)


@dataclass(frozen=True)
class Fact1Result:
    holds: bool
    bridge: int | None = None
    move: ExchangeMove | None = None


def _sides_of_bridge(H: Graph, G: Graph, e: int) -> tuple[set[int], set[int]]:
    u, v = G.edges[e]
    sides = []
    for root, other in ((u, v), (v, u)):
        seen = {root}
        stack = [root]
        while stack:
            x = stack.pop()
            for y in H.adj[x]:
                if y in seen or (x == root and y == other):
                    continue
                seen.add(y)
                stack.append(y)
        sides.append(seen)
    return sides[0], sides[1]


def fact1_holds(G: Graph, S: SpanningSelection) -> Fact1Result:
    """Check that at most two G-edges join the two sides of every bridge of H."""
    H = S.H
    for e in S.h_bridges():
        I1, I2 = _sides_of_bridge(H, G, e)
        between = [i for i, (x, y) in enumerate(G.edges)
                   if (x in I1 and y in I2) or (x in I2 and y in I1)]
        if len(between) > 2:
            extra = [i for i in between if i != e]
            flip = I2 if min(I1) < min(I2) else I1
            move = ExchangeMove(e, (extra[0], extra[1]), frozenset(flip), len(between))
            return Fact1Result(False, e, move)
    return Fact1Result(True)


# -- local search ----------------------------------------------------------------------


def _h_connected(G: Graph, side: int) -> bool:
    masks = G.masks
    full = (1 << G.n) - 1
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            v = low.bit_length() - 1
            other = full & ~side if side >> v & 1 else side
            nxt |= masks[v] & other
            f ^= low
        frontier = nxt & ~seen
        seen |= frontier
    return seen == full


def _random_tree_side(G: Graph, rng: random.Random) -> int:
    root = rng.randrange(G.n)
    depth = {root: 0}
    stack = [root]
    while stack:
        x = stack.pop(rng.randrange(len(stack)))
        nbrs = list(G.adj[x])
        rng.shuffle(nbrs)
        for y in nbrs:
            if y not in depth:
                depth[y] = depth[x] + 1
                stack.append(y)
    side = 0
    for v, d in depth.items():
        if d % 2:
            side |= 1 << v
    return side


def _climb(G: Graph, side: int, rng: random.Random) -> int:
    masks = G.masks
    while True:
        improved = False
        order = list(range(G.n))
        rng.shuffle(order)
        for v in order:
            same_mask = side if side >> v & 1 else ~side
            same = bin(masks[v] & same_mask & ((1 << G.n) - 1)).count("1")
            cross = len(G.adj[v]) - same
            if same > cross:
                trial = side ^ (1 << v)
                if _h_connected(G, trial):
                    side = trial
                    improved = True
        res = fact1_holds(G, SpanningSelection(G, side))
        if not res.holds:
            side = res.move.apply(SpanningSelection(G, side)).side
            improved = True
        if not improved:
            return side


def _normalise(side: int, n: int) -> int:
    return side ^ ((1 << n) - 1) if side & 1 else side


def local_search_bipartite_spanning(G: Graph, seed: int = 0, restarts: int = 8) -> SpanningSelection:
    """Vertex flips plus the bridge exchange, from several random spanning-tree starts."""
    if not is_connected(G):
        raise GraphError("graph must be connected")
    rng = random.Random(seed)
    best = None
    for _ in range(restarts):
        side = _normalise(_climb(G, _random_tree_side(G, rng), rng), G.n)
        sel = SpanningSelection(G, side)
        if best is None or _key(sel) < _key(best):
            best = sel
    return best
