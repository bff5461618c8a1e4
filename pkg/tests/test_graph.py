import math
import random
from math import comb

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from properconn.errors import FormatError, GraphError
from properconn.graph import (
    VertexPartition,
    bipartition,
    complete,
    complete_bipartite,
    cycle,
    degree,
    edge_cut_size,
    extremal_bipartite,
    extremal_general,
    from_edge_list,
    is_complete,
    is_connected,
    is_equitable,
    max_degree,
    min_degree,
    parse_edge_list,
    parse_graph,
    parse_graph6,
    path,
    sigma2,
    star,
    to_edge_list,
    to_graph6,
)

from conftest import connected_graphs


def nx_graph6(G):
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges)
    return nx.to_graph6_bytes(H, header=False).decode().strip()


def brute_sigma2(G):
    sums = [len(G.adj[x]) + len(G.adj[y]) for x in range(G.n) for y in range(x + 1, G.n)
            if not G.has_edge(x, y)]
    return min(sums, default=math.inf)


class TestConstruction:
    def test_triangle(self):
        G = from_edge_list(3, [(0, 1), (1, 2), (0, 2)])
        assert G.m == 3 and G.edges == ((0, 1), (0, 2), (1, 2))

    def test_duplicate_collapsed(self):
        assert from_edge_list(2, [(0, 1), (1, 0)]).m == 1

    def test_out_of_range_names_pair(self):
        with pytest.raises(GraphError, match=r"\(0, 4\)"):
            from_edge_list(4, [(0, 4)])

    def test_self_loop(self):
        with pytest.raises(GraphError, match="self-loop"):
            from_edge_list(3, [(1, 1)])

    def test_adjacency_matches_edges(self):
        G = extremal_general(11)
        assert sum(len(a) for a in G.adj) == 2 * G.m
        for i, (u, v) in enumerate(G.edges):
            assert u < v and v in G.adj[u] and G.eid(v, u) == i

    def test_pickle_roundtrip(self):
        import pickle
        G = cycle(5)
        H = pickle.loads(pickle.dumps(G))
        assert H == G and H.adj == G.adj


class TestGraph6:
    @pytest.mark.parametrize("text,expected", [("Bw", complete(3)), ("A_", complete(2)), ("Bg", path(3))])
    def test_known_strings(self, text, expected):
        assert parse_graph6(text) == expected
        assert nx_graph6(expected) == text  # independent encoder agrees

    def test_p3_roundtrip(self):
        assert to_graph6(parse_graph6("Bg")) == "Bg"

    def test_header_accepted(self):
        assert parse_graph6(">>graph6<<Bw") == complete(3)

    def test_bad_length_reports_offset(self):
        with pytest.raises(FormatError, match="offset"):
            parse_graph6("Bww")

    def test_nonzero_padding(self):
        with pytest.raises(FormatError, match="padding") as exc:
            parse_graph6("B~")
        assert exc.value.offset == 1

    def test_invalid_byte(self):
        with pytest.raises(FormatError) as exc:
            parse_graph6("C\x01w")
        assert exc.value.offset == 1

    def test_generator_roundtrip(self):
        gens = [complete(7), complete_bipartite(3, 4), path(10), cycle(9), star(6),
                extremal_general(9), extremal_general(13), extremal_bipartite(3), extremal_bipartite(5)]
        for G in gens:
            s = to_graph6(G)
            assert parse_graph6(s) == G
            assert s == nx_graph6(G)

    @given(connected_graphs(max_n=20))
    @settings(max_examples=150, deadline=None)
    def test_roundtrip_property(self, G):
        assert parse_graph6(to_graph6(G)) == G
        assert to_graph6(G) == nx_graph6(G)

    def test_large_n_rejected(self):
        with pytest.raises(GraphError):
            to_graph6(path(63))


class TestEdgeList:
    def test_roundtrip(self):
        G = extremal_general(9)
        assert parse_edge_list(to_edge_list(G)) == G

    def test_comments_and_blanks(self):
        G = parse_edge_list("# a square\n4 4\n\n0 1\n1 2  # edge\n2 3\n3 0\n")
        assert G == cycle(4)

    def test_error_line_number(self):
        with pytest.raises(FormatError) as exc:
            parse_edge_list("3 2\n0 1\n1 x\n")
        assert exc.value.line == 3

    def test_count_mismatch(self):
        with pytest.raises(FormatError, match="declares 3"):
            parse_edge_list("3 3\n0 1\n")

    def test_autodetect(self):
        assert parse_graph("Bw\n") == complete(3)
        assert parse_graph("3 2\n0 1\n1 2\n") == path(3)


class TestStatistics:
    def test_degrees(self):
        assert degree(cycle(5), 0) == 2
        assert min_degree(star(4)) == 1
        assert max_degree(complete(4)) == 3

    def test_sigma2(self):
        assert sigma2(cycle(5)) == 4
        assert sigma2(complete(4)) == math.inf
        assert sigma2(extremal_general(9)) == 4

    @given(connected_graphs(max_n=9))
    @settings(max_examples=100, deadline=None)
    def test_sigma2_matches_brute_force(self, G):
        assert sigma2(G) == brute_sigma2(G)

    def test_sigma2_extremal_general(self):
        # the smallest nonadjacent pair is two degree-2 triangle vertices when q >= 4
        for n in (9, 11, 13, 15):
            G = extremal_general(n)
            assert sigma2(G) == brute_sigma2(G)
            assert 2 * sigma2(G) >= n - 2  # d(x)+d(y) >= n/2 - 1
            assert 2 * sigma2(G) < n  # but below the n/2 threshold
        assert sigma2(extremal_general(9)) == 9 - 5

    def test_sigma2_extremal_bipartite(self):
        G = extremal_bipartite(3)
        assert sigma2(G) == 6 == brute_sigma2(G)
        assert 4 * sigma2(G) >= G.n + 4 and 4 * sigma2(G) < G.n + 6
        for t in range(2, 6):
            assert sigma2(extremal_bipartite(t)) == brute_sigma2(extremal_bipartite(t)) == min(2 * t, t + 3)

    def test_predicates(self):
        assert is_complete(complete(5))
        assert not is_complete(cycle(5))
        assert bipartition(cycle(6)) == VertexPartition.of({0, 2, 4}, {1, 3, 5})
        assert bipartition(complete(3)) is None
        assert not is_connected(from_edge_list(3, [(0, 1)]))

    def test_bipartition_per_component(self):
        G = from_edge_list(5, [(0, 1), (2, 3), (3, 4)])
        assert bipartition(G) == VertexPartition.of({0, 2, 4}, {1, 3})

    def test_edge_cut(self):
        assert edge_cut_size(cycle(4), {0, 1}, {2, 3}) == 2
        assert edge_cut_size(complete(4), {0}, {1, 2, 3}) == 3
        G = extremal_general(9)
        clique = set(range(3, 6))
        assert edge_cut_size(G, clique, set(range(9)) - clique) == 1
        with pytest.raises(GraphError):
            edge_cut_size(G, {0, 1}, {1, 2})


class TestPartitions:
    @pytest.mark.parametrize("sizes,expected", [((3, 3), True), ((4, 2), False), ((2, 3, 3), True)])
    def test_equitable(self, sizes, expected):
        parts, start = [], 0
        for s in sizes:
            parts.append(range(start, start + s))
            start += s
        assert is_equitable(VertexPartition.of(*parts)) is expected

    def test_random_partitions(self):
        rng = random.Random(5)
        for _ in range(300):
            n, k = rng.randint(1, 15), rng.randint(1, 4)
            labels = [rng.randrange(k) for _ in range(n)]
            parts = [[v for v in range(n) if labels[v] == i] for i in range(k)]
            sizes = [len(p) for p in parts]
            assert is_equitable(VertexPartition.of(*parts)) == (max(sizes) - min(sizes) <= 1)

    def test_overlap_and_coverage(self):
        with pytest.raises(GraphError):
            VertexPartition.of({0, 1}, {1, 2})
        with pytest.raises(GraphError):
            VertexPartition.of({0}, {2})


class TestGenerators:
    def test_extremal_general_shape(self):
        G = extremal_general(9)
        assert (G.n, G.m) == (9, 11)
        for n in (9, 11, 13):
            q = (n - 3) // 2
            assert extremal_general(n).m == 3 + 2 * comb(q, 2) + 2

    def test_extremal_bipartite_shape(self):
        G = extremal_bipartite(3)
        assert (G.n, G.m) == (19, 30)
        assert bipartition(G) is not None
        for t in range(2, 6):
            assert extremal_bipartite(t).m == 3 * t * t + 3

    def test_closed_form_edge_counts(self):
        for n in range(1, 9):
            assert complete(n).m == n * (n - 1) // 2
        assert star(4).n == 5 and star(4).m == 4
        assert complete_bipartite(2, 3).m == 6

    @pytest.mark.parametrize("bad", [8, 7, 10])
    def test_extremal_general_rejects(self, bad):
        with pytest.raises(GraphError):
            extremal_general(bad)

    def test_extremal_bipartite_rejects(self):
        with pytest.raises(GraphError):
            extremal_bipartite(1)

    @given(st.integers(3, 30))
    def test_generators_symmetric(self, n):
        for G in (complete(min(n, 12)), path(n), cycle(n), star(n)):
            for u in range(G.n):
                assert u not in G.adj[u]
                for v in G.adj[u]:
                    assert u in G.adj[v]
