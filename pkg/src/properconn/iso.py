"""Canonical labelings for small graphs (exhaustive within refined cells).

Vertices are first split by iterated colour refinement, an
isomorphism-invariant ordered partition; the canonical form is the
lexicographically smallest sorted edge list over all labelings that respect
that cell order. Exponential in the cell sizes, so intended for n <= 9.
"""

from __future__ import annotations

from itertools import permutations, product

from .graph import Graph, from_edge_list

MAX_CANON_N = 10


def refine(G: Graph) -> list[list[int]]:
    """Ordered partition of V(G) into colour-refinement cells."""
    color = [len(a) for a in G.adj]
    while True:
        sig = [(color[v], tuple(sorted(color[w] for w in G.adj[v]))) for v in range(G.n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(color)):
            color = new
            break
        color = new
    cells: dict[int, list[int]] = {}
    for v in range(G.n):
        cells.setdefault(color[v], []).append(v)
    return [cells[c] for c in sorted(cells)]


def canonical_form(G: Graph) -> tuple[int, tuple[tuple[int, int], ...]]:
    if G.n > MAX_CANON_N:
        raise ValueError(f"canonical_form is exhaustive; n must be <= {MAX_CANON_N}")
    cells = refine(G)
    best = None
    for choice in product(*(permutations(c) for c in cells)):
        label = {}
        i = 0
        for perm in choice:
            for v in perm:
                label[v] = i
                i += 1
        edges = sorted((min(label[u], label[v]), max(label[u], label[v])) for u, v in G.edges)
        key = tuple(edges)
        if best is None or key < best:
            best = key
    return G.n, best if best is not None else ()


def canonical_graph(G: Graph) -> Graph:
    n, edges = canonical_form(G)
    return from_edge_list(n, edges)


def is_isomorphic(G: Graph, H: Graph) -> bool:
    if G.n != H.n or G.m != H.m:
        return False
    if sorted(len(a) for a in G.adj) != sorted(len(a) for a in H.adj):
        return False
    return canonical_form(G) == canonical_form(H)
