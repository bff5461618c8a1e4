import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from properconn.colorpath import (
    EdgeColoring,
    brute_proper_connected,
    check_proper_connection,
    enumerate_proper_paths,
    exists_proper_path,
    find_proper_path,
    has_strong_property,
    is_proper_connected,
    is_proper_path,
    start_end_pairs,
    walk_state_count,
)
from properconn.errors import GraphError
from properconn.graph import complete, cycle, from_edge_list, path, star

from conftest import connected_graphs, random_connected


def cyc_colors(G, around):
    """Colour C_n edges given colours in cyclic order 0-1, 1-2, ..., (n-1)-0."""
    n = G.n
    cols = [0] * G.m
    for i, col in enumerate(around):
        cols[G.eid(i, (i + 1) % n)] = col
    return cols


C4 = cycle(4)
C4_ALT = cyc_colors(C4, [1, 2, 1, 2])


def brute_pairs(G, cols, u, v):
    out = set()
    for p in enumerate_proper_paths(G, cols, u):
        if p[-1] == v:
            out.add((cols[G.eid(p[0], p[1])], cols[G.eid(p[-2], p[-1])]))
    return out


class TestEdgeColoring:
    def test_validation(self):
        with pytest.raises(GraphError):
            EdgeColoring.of(C4, [1, 2, 3])
        with pytest.raises(GraphError):
            EdgeColoring.of(C4, [1, 2, 3, 1], k=2)
        assert EdgeColoring.of(C4, C4_ALT).k == 2


class TestIsProperPath:
    def test_alternation(self):
        assert is_proper_path(C4, C4_ALT, [0, 1, 2])

    def test_monochromatic_p3(self):
        assert not is_proper_path(path(3), [1, 1], [0, 1, 2])

    def test_trivial_paths(self):
        assert is_proper_path(path(3), [1, 1], [0, 1])
        assert is_proper_path(path(3), [1, 1], [2])

    def test_errors(self):
        with pytest.raises(GraphError):
            is_proper_path(C4, C4_ALT, [0, 2])
        with pytest.raises(GraphError):
            is_proper_path(C4, C4_ALT, [0, 1, 0])


class TestExistence:
    def test_examples(self):
        assert exists_proper_path(C4, C4_ALT, 0, 2)
        assert not exists_proper_path(path(3), [1, 1], 0, 2)
        assert exists_proper_path(complete(3), [1, 1, 1], 0, 2)

    def test_same_vertex_rejected(self):
        with pytest.raises(GraphError):
            exists_proper_path(C4, C4_ALT, 1, 1)

    def test_walk_is_not_a_path(self):
        # u-a-v both colour 1, plus a triangle a-b-c coloured 2,1,2: a proper
        # walk u,a,b,c,a,v exists but no proper path does
        G = from_edge_list(5, [(0, 1), (1, 2), (1, 3), (3, 4), (1, 4)])
        cols = [0] * G.m
        for (x, y), col in {(0, 1): 1, (1, 2): 1, (1, 3): 2, (3, 4): 1, (1, 4): 2}.items():
            cols[G.eid(x, y)] = col
        assert not exists_proper_path(G, cols, 0, 2)
        assert not any(p[-1] == 2 for p in enumerate_proper_paths(G, cols, 0))

    def test_returned_path_is_proper(self):
        rng = random.Random(3)
        for _ in range(200):
            G = random_connected(rng, rng.randint(2, 9))
            cols = [rng.randint(1, 3) for _ in range(G.m)]
            u, v = rng.sample(range(G.n), 2)
            p = find_proper_path(G, cols, u, v)
            if p is not None:
                assert p[0] == u and p[-1] == v and is_proper_path(G, cols, p)

    @given(connected_graphs(max_n=7), st.data())
    @settings(max_examples=150, deadline=None)
    def test_symmetry(self, G, data):
        cols = data.draw(st.lists(st.integers(1, 3), min_size=G.m, max_size=G.m))
        for u, v in itertools.combinations(range(G.n), 2):
            assert exists_proper_path(G, cols, u, v) == exists_proper_path(G, cols, v, u)

    @given(connected_graphs(max_n=7), st.data())
    @settings(max_examples=100, deadline=None)
    def test_color_renaming_invariance(self, G, data):
        cols = data.draw(st.lists(st.integers(1, 3), min_size=G.m, max_size=G.m))
        perm = data.draw(st.permutations([1, 2, 3]))
        renamed = [perm[c - 1] for c in cols]
        assert is_proper_connected(G, cols) == is_proper_connected(G, renamed)
        assert has_strong_property(G, cols) == has_strong_property(G, renamed)

    def test_adding_edges_keeps_paths(self):
        rng = random.Random(8)
        for _ in range(200):
            G = random_connected(rng, rng.randint(3, 8), 0.2)
            cols = [rng.randint(1, 3) for _ in range(G.m)]
            missing = [(u, v) for u in range(G.n) for v in range(u + 1, G.n) if not G.has_edge(u, v)]
            if not missing:
                continue
            H = G.add_edges([rng.choice(missing)])
            hcols = [cols[G.eid(*e)] if G.has_edge(*e) else rng.randint(1, 3) for e in H.edges]
            for u, v in itertools.combinations(range(G.n), 2):
                if exists_proper_path(G, cols, u, v):
                    assert exists_proper_path(H, hcols, u, v)

    def test_state_count_bound(self):
        rng = random.Random(4)
        for _ in range(300):
            G = random_connected(rng, rng.randint(2, 12))
            k = rng.randint(1, 4)
            cols = [rng.randint(1, k) for _ in range(G.m)]
            used = max(cols, default=1)
            for u in range(G.n):
                assert walk_state_count(G, cols, u) <= (used + 1) * G.n


class TestProperConnected:
    def test_examples(self):
        assert is_proper_connected(C4, C4_ALT)
        assert not is_proper_connected(star(3), [1, 1, 1])
        assert is_proper_connected(star(3), [1, 2, 3])

    def test_disconnected_reason(self):
        G = from_edge_list(4, [(0, 1), (2, 3)])
        res = check_proper_connection(G, [1, 2])
        assert not res.proper_connected and res.reason == "disconnected"

    def test_failing_pair(self):
        res = check_proper_connection(path(3), [1, 1])
        assert res.failing_pair == (0, 2) and res.reason == "no-proper-path"

    def test_matches_brute_force(self):
        rng = random.Random(9)
        for _ in range(400):
            G = random_connected(rng, rng.randint(2, 7), rng.random() * 0.6)
            cols = [rng.randint(1, rng.randint(1, 3)) for _ in range(G.m)]
            assert is_proper_connected(G, cols) == brute_proper_connected(G, cols)


class TestStartEnd:
    def test_c4_adjacent(self):
        assert start_end_pairs(C4, C4_ALT, 0, 1).pairs == {(1, 1), (2, 2)}

    def test_c4_opposite(self):
        assert start_end_pairs(C4, C4_ALT, 0, 2).pairs == {(1, 2), (2, 1)}

    def test_single_edge(self):
        assert start_end_pairs(path(2), [1], 0, 1).pairs == {(1, 1)}

    def test_color_cap(self):
        with pytest.raises(GraphError):
            start_end_pairs(star(9), list(range(1, 10)), 1, 2)

    def test_matches_enumeration(self):
        rng = random.Random(10)
        for _ in range(300):
            G = random_connected(rng, rng.randint(2, 7), rng.random() * 0.7)
            cols = [rng.randint(1, 3) for _ in range(G.m)]
            u, v = rng.sample(range(G.n), 2)
            assert start_end_pairs(G, cols, u, v).pairs == brute_pairs(G, cols, u, v)


class TestStrong:
    def test_examples(self):
        assert has_strong_property(C4, C4_ALT)
        assert not has_strong_property(path(2), [1])
        C6 = cycle(6)
        assert has_strong_property(C6, cyc_colors(C6, [1, 2] * 3))

    def test_matches_definition(self):
        rng = random.Random(12)
        for _ in range(150):
            G = random_connected(rng, rng.randint(2, 6), rng.random() * 0.8)
            cols = [rng.randint(1, 2) for _ in range(G.m)]
            expect = all(
                any(s1 != s2 and e1 != e2
                    for (s1, e1), (s2, e2) in itertools.combinations(brute_pairs(G, cols, u, v), 2))
                for u, v in itertools.combinations(range(G.n), 2))
            assert has_strong_property(G, cols) == expect
