"""Bridges and the bridge-block tree (2-edge-connected components contracted)."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, GraphError, is_connected


def find_bridges(G: Graph) -> set[int]:
    """Edge indices of all bridges, via iterative low-link DFS."""
    n = G.n
    disc = [-1] * n
    low = [0] * n
    bridges: set[int] = set()
    timer = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = timer
        timer += 1
        # frame: (vertex, edge used to enter, iterator position)
        stack = [(root, -1, 0)]
        while stack:
            v, pe, i = stack[-1]
            nbrs = G.inc[v]
            if i < len(nbrs):
                stack[-1] = (v, pe, i + 1)
                w, e = nbrs[i]
                if e == pe:
                    continue
                if disc[w] < 0:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, e, 0))
                elif disc[w] < low[v]:
                    low[v] = disc[w]
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    if low[v] < low[p]:
                        low[p] = low[v]
                    if low[v] > disc[p]:
                        bridges.add(pe)
    return bridges


@dataclass(frozen=True)
class BridgeBlockTree:
    blocks: tuple[frozenset[int], ...]
    bridges: tuple[int, ...]
    tree_adjacency: tuple[frozenset[int], ...]
    block_of: tuple[int, ...]
    # bridge edge index -> (block, block) it joins
    bridge_ends: dict[int, tuple[int, int]]

    def tree_degree(self, b: int) -> int:
        return len(self.tree_adjacency[b])

    def is_singleton(self, b: int) -> bool:
        return len(self.blocks[b]) == 1


def bridge_block_tree(G: Graph) -> BridgeBlockTree:
    if not is_connected(G):
        raise GraphError("bridge-block tree is defined for connected graphs only")
    bridges = find_bridges(G)
    block_of = [-1] * G.n
    blocks: list[frozenset[int]] = []
    for s in range(G.n):
        if block_of[s] >= 0:
            continue
        b = len(blocks)
        block_of[s] = b
        members, stack = [s], [s]
        while stack:
            x = stack.pop()
            for y, e in G.inc[x]:
                if e not in bridges and block_of[y] < 0:
                    block_of[y] = b
                    members.append(y)
                    stack.append(y)
        blocks.append(frozenset(members))
    adj: list[set[int]] = [set() for _ in blocks]
    ends = {}
    for e in sorted(bridges):
        u, v = G.edges[e]
        bu, bv = block_of[u], block_of[v]
        adj[bu].add(bv)
        adj[bv].add(bu)
        ends[e] = (bu, bv)
    return BridgeBlockTree(
        blocks=tuple(blocks),
        bridges=tuple(sorted(bridges)),
        tree_adjacency=tuple(frozenset(a) for a in adj),
        block_of=tuple(block_of),
        bridge_ends=ends,
    )


def leaf_blocks(T: BridgeBlockTree) -> list[int]:
    if len(T.blocks) < 2:
        return []
    return [b for b in range(len(T.blocks)) if len(T.tree_adjacency[b]) == 1]


def max_tree_degree(T: BridgeBlockTree) -> int:
    return max((len(a) for a in T.tree_adjacency), default=0)


def bridge_fan(G: Graph) -> int:
    """Largest number of bridges meeting at a single vertex."""
    count = [0] * G.n
    for e in find_bridges(G):
        u, v = G.edges[e]
        count[u] += 1
        count[v] += 1
    return max(count, default=0)
