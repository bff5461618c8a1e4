"""Simple undirected graphs on vertices ``0..n-1`` with stable edge indices.

Edge ``i`` of a graph is ``graph.edges[i]``; colorings and witness files are
arrays parallel to that list, so the ordering here is load-bearing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import FormatError, GraphError


class Graph:
    """Immutable simple graph. Build with :func:`from_edge_list`."""

    def __init__(self, n: int, edges: Sequence[tuple[int, int]]):
        # trusted constructor: edges must already be canonical (sorted, u < v, unique)
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(edges)
        adj: list[set[int]] = [set() for _ in range(n)]
        inc: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for i, (u, v) in enumerate(self.edges):
            adj[u].add(v)
            adj[v].add(u)
            inc[u].append((v, i))
            inc[v].append((u, i))
        self.adj: tuple[frozenset[int], ...] = tuple(frozenset(a) for a in adj)
        self.inc: tuple[tuple[tuple[int, int], ...], ...] = tuple(tuple(sorted(x)) for x in inc)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhoods as integer bitmasks."""
        return tuple(sum(1 << w for w in a) for a in self.adj)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def eid(self, u: int, v: int) -> int:
        return self.edge_index[(u, v) if u < v else (v, u)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def __getstate__(self):
        return (self.n, self.edges)

    def __setstate__(self, state):
        self.__init__(*state)

    # -- derived graphs -------------------------------------------------

    def subgraph(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph, relabelled in increasing order.

        Returns the subgraph and the list mapping new labels to old ones.
        """
        keep = sorted(set(vertices))
        new = {v: i for i, v in enumerate(keep)}
        pairs = [(new[u], new[v]) for u, v in self.edges if u in new and v in new]
        return from_edge_list(len(keep), pairs), keep

    def delete_vertex(self, v: int) -> tuple[Graph, list[int]]:
        return self.subgraph(w for w in range(self.n) if w != v)

    def edge_subgraph(self, edge_ids: Iterable[int]) -> Graph:
        """Spanning subgraph on the given edge indices (all n vertices kept)."""
        return from_edge_list(self.n, [self.edges[i] for i in edge_ids])

    def add_edges(self, pairs: Iterable[tuple[int, int]]) -> Graph:
        return from_edge_list(self.n, list(self.edges) + list(pairs))


@dataclass(frozen=True)
class VertexPartition:
    parts: tuple[frozenset[int], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for p in self.parts:
            if seen & p:
                raise GraphError("partition parts overlap")
            seen |= p
        if seen != set(range(len(seen))):
            raise GraphError("partition must cover 0..n-1")

    @classmethod
    def of(cls, *parts: Iterable[int]) -> VertexPartition:
        return cls(tuple(frozenset(p) for p in parts))

    def sizes(self) -> list[int]:
        return [len(p) for p in self.parts]


def from_edge_list(n: int, pairs: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph, collapsing duplicate edges and ordering them lexicographically."""
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    canon = set()
    for u, v in pairs:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"vertex out of range in pair ({u}, {v}) for n={n}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        canon.add((u, v) if u < v else (v, u))
    return Graph(n, sorted(canon))


# -- graph6 -------------------------------------------------------------


def to_graph6(G: Graph) -> str:
    n = G.n
    if n >= 63:
        raise GraphError("graph6 short form supports n < 63 only")
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if G.has_edge(i, j) else 0)
    bits += [0] * (-len(bits) % 6)
    out = [chr(63 + n)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(chr(63 + val))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise FormatError("empty graph6 string", offset=0)
    for off, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise FormatError(f"invalid graph6 byte {ch!r}", offset=off)
    n = ord(s[0]) - 63
    if n == 63:
        raise FormatError("long-form graph6 (n >= 63) not supported", offset=0)
    nbits = n * (n - 1) // 2
    need = -(-nbits // 6)
    if len(s) - 1 != need:
        raise FormatError(f"expected {need} data bytes for n={n}, got {len(s) - 1}",
                          offset=min(len(s), 1 + need))
    pairs = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(s[1 + k // 6]) - 63
            if (byte >> (5 - k % 6)) & 1:
                pairs.append((i, j))
            k += 1
    if nbits % 6:
        pad = 6 - nbits % 6
        if (ord(s[-1]) - 63) & ((1 << pad) - 1):
            raise FormatError("nonzero padding bits", offset=len(s) - 1)
    return from_edge_list(n, pairs)


# -- edge-list text format ----------------------------------------------


def _content_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_edge_list(text: str) -> Graph:
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("empty edge-list input", line=1)
    lineno, head = lines[0]
    try:
        n, m = (int(x) for x in head)
    except ValueError:
        raise FormatError("header must be 'n m'", line=lineno) from None
    body = lines[1:]
    if len(body) != m:
        raise FormatError(f"header declares {m} edges, found {len(body)}",
                          line=body[-1][0] if body else lineno)
    pairs = []
    for lineno, toks in body:
        try:
            u, v = (int(x) for x in toks)
        except ValueError:
            raise FormatError("edge line must be 'u v'", line=lineno) from None
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise FormatError(f"bad edge ({u}, {v}) for n={n}", line=lineno)
        pairs.append((u, v))
    G = from_edge_list(n, pairs)
    if G.m != m:
        raise FormatError("duplicate edges in edge list", line=lines[0][0])
    return G


def to_edge_list(G: Graph) -> str:
    rows = [f"{G.n} {G.m}"] + [f"{u} {v}" for u, v in G.edges]
    return "\n".join(rows) + "\n"


def parse_graph(text: str) -> Graph:
    """Accept either an edge-list document or a single graph6 line."""
    lines = list(_content_lines(text))
    if len(lines) == 1 and len(lines[0][1]) == 1 and not lines[0][1][0].lstrip("-").isdigit():
        return parse_graph6(lines[0][1][0])
    return parse_edge_list(text)


# -- statistics and predicates ------------------------------------------


def degree(G: Graph, v: int) -> int:
    if not 0 <= v < G.n:
        raise GraphError(f"vertex {v} out of range")
    return len(G.adj[v])


def min_degree(G: Graph) -> int:
    return min((len(a) for a in G.adj), default=0)


def max_degree(G: Graph) -> int:
    return max((len(a) for a in G.adj), default=0)


def sigma2(G: Graph) -> float | int:
    """Minimum of d(x)+d(y) over nonadjacent pairs; ``math.inf`` when complete."""
    deg = [len(a) for a in G.adj]
    best: float | int = math.inf
    for x, y in combinations(range(G.n), 2):
        if y not in G.adj[x] and deg[x] + deg[y] < best:
            best = deg[x] + deg[y]
    return best


def is_complete(G: Graph) -> bool:
    return G.m == G.n * (G.n - 1) // 2


def components(G: Graph) -> list[list[int]]:
    seen = [False] * G.n
    out = []
    for s in range(G.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, stack = [], [s]
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in G.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        out.append(sorted(comp))
    return out


def is_connected(G: Graph) -> bool:
    return G.n > 0 and len(components(G)) == 1


def bipartition(G: Graph) -> VertexPartition | None:
    side = [-1] * G.n
    for s in range(G.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        queue = [s]
        for x in queue:
            for y in sorted(G.adj[x]):
                if side[y] < 0:
                    side[y] = 1 - side[x]
                    queue.append(y)
                elif side[y] == side[x]:
                    return None
    return VertexPartition.of([v for v in range(G.n) if side[v] == 0],
                              [v for v in range(G.n) if side[v] == 1])


def is_bipartite(G: Graph) -> bool:
    return bipartition(G) is not None


def edge_cut_size(G: Graph, X: Iterable[int], Y: Iterable[int]) -> int:
    xs, ys = set(X), set(Y)
    if xs & ys:
        raise GraphError("vertex sets overlap")
    return sum(1 for u, v in G.edges if (u in xs and v in ys) or (u in ys and v in xs))


def is_equitable(P: VertexPartition) -> bool:
    sizes = P.sizes()
    return not sizes or max(sizes) - min(sizes) <= 1


# -- generators -----------------------------------------------------------
# Labelings are fixed so golden values stay stable; see README for the layout.


def complete(n: int) -> Graph:
    return from_edge_list(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    """Part A is ``0..a-1``, part B is ``a..a+b-1``."""
    return from_edge_list(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def path(n: int) -> Graph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def star(m: int) -> Graph:
    """K_{1,m}: centre 0, leaves 1..m."""
    return from_edge_list(m + 1, [(0, i) for i in range(1, m + 1)])


def extremal_general(n: int) -> Graph:
    """Triangle plus two cliques hanging off one triangle vertex.

    Vertex 0 is the hub, {0, 1, 2} the triangle; clique one is
    ``3..3+q-1`` attached through vertex 3, clique two is ``3+q..n-1``
    attached through vertex ``3+q``, with ``q = (n-3)/2``.
    """
    if n < 9 or n % 2 == 0:
        raise GraphError("extremal_general requires odd n >= 9")
    q = (n - 3) // 2
    a = list(range(3, 3 + q))
    b = list(range(3 + q, n))
    pairs = [(0, 1), (0, 2), (1, 2), (0, a[0]), (0, b[0])]
    pairs += list(combinations(a, 2)) + list(combinations(b, 2))
    return from_edge_list(n, pairs)


def extremal_bipartite(t: int = 3) -> Graph:
    """Hub 0 joined by single edges to three disjoint copies of K_{t,t}.

    Copy ``i`` occupies ``1+2ti .. 2t(i+1)``; its first ``t`` vertices form one
    side and the first vertex is the attachment point.
    """
    if t < 2:
        raise GraphError("extremal_bipartite requires t >= 2")
    pairs = []
    for i in range(3):
        base = 1 + 2 * t * i
        pairs.append((0, base))
        pairs += [(base + x, base + t + y) for x in range(t) for y in range(t)]
    return from_edge_list(6 * t + 1, pairs)
