import random

import pytest
from hypothesis import given, settings

from properconn.census import connected_graphs as iso_classes
from properconn.decomp import bridge_block_tree, bridge_fan, find_bridges, leaf_blocks, max_tree_degree
from properconn.errors import GraphError
from properconn.exact import pc_exact
from properconn.graph import (
    components,
    cycle,
    extremal_bipartite,
    extremal_general,
    from_edge_list,
    is_connected,
    path,
    star,
)

from conftest import connected_graphs, random_connected


def two_squares():
    return from_edge_list(8, [(0, 1), (1, 2), (2, 3), (0, 3), (3, 4),
                              (4, 5), (5, 6), (6, 7), (4, 7)])


def naive_bridges(G):
    base = len(components(G))
    return {i for i in range(G.m)
            if len(components(G.edge_subgraph(j for j in range(G.m) if j != i))) > base}


def test_bridges_examples():
    assert find_bridges(path(4)) == {0, 1, 2}
    assert find_bridges(cycle(4)) == set()
    G = extremal_general(9)
    assert {G.edges[e] for e in find_bridges(G)} == {(0, 3), (0, 6)}


def test_bridges_disconnected_input():
    G = from_edge_list(7, [(0, 1), (1, 2), (0, 2), (3, 4), (5, 6)])
    assert {G.edges[e] for e in find_bridges(G)} == {(3, 4), (5, 6)}


def test_long_path_no_recursion_limit():
    assert len(find_bridges(path(20000))) == 19999


@given(connected_graphs(max_n=10))
@settings(max_examples=200, deadline=None)
def test_bridges_match_deletion(G):
    assert find_bridges(G) == naive_bridges(G)


def test_tree_examples():
    T = bridge_block_tree(cycle(6))
    assert len(T.blocks) == 1 and T.bridges == ()
    T = bridge_block_tree(star(3))
    assert len(T.blocks) == 4 and len(T.bridges) == 3
    assert sorted(T.tree_degree(b) for b in range(4)) == [1, 1, 1, 3]
    T = bridge_block_tree(extremal_bipartite(3))
    assert sorted(len(b) for b in T.blocks) == [1, 6, 6, 6]
    assert len(T.bridges) == 3 and max_tree_degree(T) == 3
    hub = T.block_of[0]
    assert T.is_singleton(hub) and T.tree_degree(hub) == 3


def test_tree_rejects_disconnected():
    with pytest.raises(GraphError):
        bridge_block_tree(from_edge_list(3, [(0, 1)]))


def test_leaf_blocks():
    T = bridge_block_tree(path(4))
    assert sorted(min(T.blocks[b]) for b in leaf_blocks(T)) == [0, 3]
    G = extremal_general(9)
    T = bridge_block_tree(G)
    assert sorted(sorted(T.blocks[b]) for b in leaf_blocks(T)) == [[3, 4, 5], [6, 7, 8]]
    assert leaf_blocks(bridge_block_tree(cycle(5))) == []


def test_max_tree_degree_examples():
    assert max_tree_degree(bridge_block_tree(two_squares())) == 1
    assert max_tree_degree(bridge_block_tree(extremal_bipartite(3))) == 3
    assert max_tree_degree(bridge_block_tree(cycle(7))) == 0


def test_bridge_fan_examples():
    assert bridge_fan(star(5)) == 5
    assert bridge_fan(extremal_bipartite(3)) == 3
    assert bridge_fan(cycle(6)) == 0


def _acyclic_connected(T):
    nb = len(T.blocks)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in T.tree_adjacency[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    edges = sum(len(a) for a in T.tree_adjacency) // 2
    return len(seen) == nb and edges == nb - 1


def test_tree_structure_random():
    rng = random.Random(11)
    for _ in range(1000):
        G = random_connected(rng, rng.randint(2, 12), rng.choice([0.0, 0.05, 0.15, 0.3]))
        T = bridge_block_tree(G)
        assert sum(len(b) for b in T.blocks) == G.n
        assert len(T.bridges) == len(T.blocks) - 1
        assert _acyclic_connected(T)
        for i, (u, v) in enumerate(G.edges):
            assert (i in T.bridges) == (T.block_of[u] != T.block_of[v])
        for b, verts in enumerate(T.blocks):
            sub, _ = G.subgraph(verts)
            assert is_connected(sub) and not find_bridges(sub)


def test_bridge_fan_lower_bounds_pc():
    for n in range(2, 8):
        for G in iso_classes(n):
            fan = bridge_fan(G)
            if fan >= 2:
                res = pc_exact(G)
                assert res.status == "exact" and res.pc >= fan
