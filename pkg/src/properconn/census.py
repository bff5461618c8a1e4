"""Graph sources for the verification harness.

* labelled enumeration of all graphs on ``n <= 7`` vertices, filtered in
  bulk with numpy (connectivity, degree conditions, traceability);
* bipartite graphs up to relabelling of one side, for ``n <= 10``;
* connected graphs up to isomorphism by vertex augmentation (the graph6
  stream used for order 8 when no external generator is available).
"""

from __future__ import annotations

from itertools import combinations, combinations_with_replacement
from typing import Iterator

import numpy as np

from .graph import Graph, bipartition, from_edge_list, is_complete, is_connected, min_degree, sigma2
from .iso import canonical_form

LABELED_MAX_N = 7
BIPARTITE_MAX_N = 10

THEOREMS = ("3.1", "4.1", "2.4", "2.5")
BIPARTITE_THEOREMS = {"4.1", "2.5"}


def pair_list(n: int) -> list[tuple[int, int]]:
    """Vertex pairs in graph6 bit order: (0,1),(0,2),(1,2),(0,3),..."""
    return [(i, j) for j in range(1, n) for i in range(j)]


def graph_from_mask(n: int, mask: int) -> Graph:
    return from_edge_list(n, [p for k, p in enumerate(pair_list(n)) if mask >> k & 1])


def satisfies(theorem: str, G: Graph) -> bool:
    """Hypotheses of each verified statement, in exact integer arithmetic."""
    n = G.n
    if n < 2 or not is_connected(G):
        return False
    if theorem == "3.1":
        return n >= 5 and not is_complete(G) and 2 * sigma2(G) >= n
    if theorem == "2.4":
        return n >= 5 and not is_complete(G) and 4 * min_degree(G) >= n
    if theorem == "4.1":
        return n >= 4 and bipartition(G) is not None and 4 * sigma2(G) >= n + 6
    if theorem == "2.5":
        return n >= 4 and bipartition(G) is not None and 8 * min_degree(G) >= n + 6
    raise ValueError(f"unknown theorem {theorem!r}")


# -- labelled enumeration -----------------------------------------------------------


def _vertex_masks(n: int, M: np.ndarray) -> list[np.ndarray]:
    adj = [np.zeros_like(M) for _ in range(n)]
    for k, (i, j) in enumerate(pair_list(n)):
        bit = (M >> k) & 1
        adj[i] |= bit << j
        adj[j] |= bit << i
    return adj


def _popcount(x: np.ndarray) -> np.ndarray:
    return np.bitwise_count(x.astype(np.uint64)).astype(np.int64)


def _connected(n: int, adj: list[np.ndarray]) -> np.ndarray:
    reach = np.ones_like(adj[0])
    for _ in range(n - 1):
        new = reach.copy()
        for v in range(n):
            new |= np.where((reach >> v) & 1 == 1, adj[v], 0)
        reach = new
    return reach == (1 << n) - 1


def traceable_mask(n: int, adj: list[np.ndarray]) -> np.ndarray:
    """Vectorised subset DP: which graphs in the batch have a Hamiltonian path."""
    N = adj[0].shape[0]
    size = 1 << n
    ends = np.zeros((N, size), dtype=np.uint16)
    a16 = [a.astype(np.uint16) for a in adj]
    for v in range(n):
        ends[:, 1 << v] = 1 << v
    for mask in range(1, size):
        e = ends[:, mask]
        if not e.any():
            continue
        for v in range(n):
            if mask >> v & 1:
                continue
            hit = (e & a16[v]) != 0
            ends[:, mask | (1 << v)] |= np.where(hit, np.uint16(1 << v), np.uint16(0))
    return ends[:, size - 1] != 0


def labeled_survivors(n: int, theorem: str, chunk: int = 1 << 18
                      ) -> Iterator[tuple[int, np.ndarray, np.ndarray]]:
    """Yield ``(scanned, masks, traceable)`` per chunk of all labelled graphs on n vertices.

    ``masks`` are the edge bitmasks (graph6 bit order) satisfying the
    theorem's hypothesis; ``traceable`` flags those with a Hamiltonian path.
    """
    if n > LABELED_MAX_N:
        raise ValueError(f"labelled enumeration limited to n <= {LABELED_MAX_N}")
    pairs = pair_list(n)
    total = 1 << len(pairs)
    full_mask = total - 1
    for lo in range(0, total, chunk):
        M = np.arange(lo, min(total, lo + chunk), dtype=np.int64)
        adj = _vertex_masks(n, M)
        deg = [_popcount(a) for a in adj]
        ok = _connected(n, adj) if n > 1 else np.ones(M.shape, bool)
        if theorem == "3.1":
            s2 = np.full(M.shape, 1 << 20, dtype=np.int64)
            for k, (i, j) in enumerate(pairs):
                nonadj = ((M >> k) & 1) == 0
                s2 = np.minimum(s2, np.where(nonadj, deg[i] + deg[j], 1 << 20))
        if theorem == "2.4":
            delta = np.min(np.stack(deg), axis=0)
        if theorem == "3.1":
            ok &= (M != full_mask) & (2 * s2 >= n) & (n >= 5)
        elif theorem == "2.4":
            ok &= (M != full_mask) & (4 * delta >= n) & (n >= 5)
        else:
            raise ValueError("labelled enumeration serves the general-graph theorems 3.1 and 2.4")
        keep = np.flatnonzero(ok)
        sub = [a[keep] for a in adj]
        trace = traceable_mask(n, sub) if keep.size else np.zeros(0, bool)
        yield len(M), M[keep], trace


# -- bipartite graphs up to relabelling of the larger side ---------------------------


def bipartite_graphs(n: int) -> Iterator[Graph]:
    """Connected bipartite graphs on n vertices with parts A = 0..a-1, B = a..n-1.

    Each B vertex is described by its neighbourhood in A; B is taken as a
    multiset and A is ordered by non-increasing degree. Every connected
    bipartite graph appears at least once (usually several times).
    """
    if n > BIPARTITE_MAX_N:
        raise ValueError(f"bipartite enumeration limited to n <= {BIPARTITE_MAX_N}")
    for a in range(1, n // 2 + 1):
        b = n - a
        subsets = range(1, 1 << a)
        for cols in combinations_with_replacement(subsets, b):
            degs = [sum(1 for c in cols if c >> i & 1) for i in range(a)]
            if any(degs[i] < degs[i + 1] for i in range(a - 1)) or degs[-1] == 0:
                continue
            pairs = [(i, a + j) for j, c in enumerate(cols) for i in range(a) if c >> i & 1]
            G = from_edge_list(n, pairs)
            if is_connected(G):
                yield G


# -- connected graphs up to isomorphism ------------------------------------------------


def connected_graphs(n: int) -> list[Graph]:
    """One representative per isomorphism class of connected graphs on n vertices."""
    if n < 1:
        return []
    level = [from_edge_list(1, [])]
    for k in range(1, n):
        seen = set()
        nxt = []
        for H in level:
            for r in range(1, k + 1):
                for nbrs in combinations(range(k), r):
                    G = from_edge_list(k + 1, list(H.edges) + [(v, k) for v in nbrs])
                    key = canonical_form(G)
                    if key not in seen:
                        seen.add(key)
                        nxt.append(from_edge_list(*key))
        level = nxt
    return sorted(level, key=lambda g: (g.m, g.edges))
