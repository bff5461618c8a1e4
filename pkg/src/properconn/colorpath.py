"""Edge colorings and proper-path reachability.

Reachability is decided in two stages. A breadth-first search over states
``(vertex, colour of the entering edge)`` finds proper *walks*; absence of a
walk proves absence of a path. A walk found that way is not always a simple
path (a pendant alternating cycle lets a walk turn around), so a non-simple
walk is confirmed or refuted by a depth-first search over simple paths,
pruned with the same walk search restricted to unvisited vertices. Answers
are therefore exact at every order, not just walk-certified.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence, Union

from .errors import GraphError
from .graph import Graph, components, is_connected

MAX_START_END_COLORS = 8


@dataclass(frozen=True)
class EdgeColoring:
    k: int
    colors: tuple[int, ...]
    graph: Graph | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(int(x) for x in self.colors))
        if self.graph is not None and len(self.colors) != self.graph.m:
            raise GraphError(f"coloring has {len(self.colors)} entries, graph has {self.graph.m} edges")
        bad = [x for x in self.colors if not 1 <= x <= self.k]
        if bad:
            raise GraphError(f"color {bad[0]} outside 1..{self.k}")

    @classmethod
    def of(cls, G: Graph, colors: Sequence[int], k: int | None = None) -> EdgeColoring:
        colors = tuple(colors)
        return cls(k if k is not None else max(colors, default=1), colors, G)

    def used(self) -> set[int]:
        return set(self.colors)

    def __len__(self) -> int:
        return len(self.colors)


Coloring = Union[EdgeColoring, Sequence[int]]


def _cols(G: Graph, c: Coloring) -> tuple[int, ...]:
    cols = c.colors if isinstance(c, EdgeColoring) else tuple(c)
    if len(cols) != G.m:
        raise GraphError(f"coloring has {len(cols)} entries, graph has {G.m} edges")
    return cols


def _width(cols: Sequence[int]) -> int:
    return max(cols, default=0) + 1


# -- kernels ------------------------------------------------------------------
# State id = vertex * K + colour of the entering edge; colour 0 means "no
# constraint" (the source, or an edge not yet coloured in a partial search).


def _walk_tree(G: Graph, cols: Sequence[int], K: int, u: int,
               start: int | None = None) -> tuple[list[int], list[int]]:
    """BFS over walk states from ``u``; ``u`` is never re-entered.

    Returns the parent table (-2 unvisited, -1 root) and the visit order.
    """
    inc = G.inc
    parent = [-2] * (G.n * K)
    root = u * K
    parent[root] = -1
    order = [root]
    for s in order:
        x, a = divmod(s, K)
        for y, e in inc[x]:
            if y == u:
                continue
            c = cols[e]
            if a and c == a:
                continue
            if s == root and start is not None and c and c != start:
                continue
            t = y * K + c
            if parent[t] == -2:
                parent[t] = s
                order.append(t)
    return parent, order


def _walk_to(parent: list[int], K: int, t: int) -> list[int]:
    walk = []
    while t >= 0:
        walk.append(t // K)
        t = parent[t]
    walk.reverse()
    return walk


def _reachable(G: Graph, cols: Sequence[int], K: int, x: int, a: int, blocked: int,
               target: int, end: int | None) -> bool:
    """Is ``target`` walk-reachable from state (x, a) avoiding ``blocked`` vertices?"""
    inc = G.inc
    seen = {x * K + a}
    stack = [(x, a)]
    while stack:
        x, a = stack.pop()
        for y, e in inc[x]:
            if blocked >> y & 1:
                continue
            c = cols[e]
            if a and c == a:
                continue
            if y == target:
                if end is None or c == end:
                    return True
                continue
            t = y * K + c
            if t not in seen:
                seen.add(t)
                stack.append((y, c))
    return False


def _dfs_path(G: Graph, cols: Sequence[int], K: int, u: int, v: int,
              start: int | None, end: int | None) -> list[int] | None:
    """Exact search for a simple proper u-v path with optional start/end colours."""
    inc = G.inc
    path = [u]

    def go(x: int, a: int, visited: int) -> bool:
        for y, e in inc[x]:
            if visited >> y & 1:
                continue
            c = cols[e]
            if a and c == a:
                continue
            if x == u and start is not None and c != start:
                continue
            if y == v:
                if end is None or c == end:
                    path.append(v)
                    return True
                continue
            nv = visited | (1 << y)
            if not _reachable(G, cols, K, y, c, nv, v, end):
                continue
            path.append(y)
            if go(y, c, nv):
                return True
            path.pop()
        return False

    return path if go(u, 0, 1 << u) else None


def find_proper_path(G: Graph, c: Coloring, u: int, v: int, *,
                     start: int | None = None, end: int | None = None) -> list[int] | None:
    """A simple proper u-v path (vertex list) or None.

    ``start``/``end`` restrict the colours of the first and last edges.
    """
    cols = _cols(G, c)
    return _find_path(G, cols, _width(cols), u, v, start, end)


def _find_path(G, cols, K, u, v, start=None, end=None, tree=None):
    if u == v:
        raise GraphError("proper paths join distinct vertices")
    parent, _ = tree if tree is not None else _walk_tree(G, cols, K, u, start)
    hit = False
    for a in range(1, K):
        if end is not None and a != end:
            continue
        t = v * K + a
        if parent[t] == -2:
            continue
        hit = True
        walk = _walk_to(parent, K, t)
        if len(set(walk)) == len(walk):
            return walk
    if not hit:
        return None
    return _dfs_path(G, cols, K, u, v, start, end)


def _failing_pair(G: Graph, cols: Sequence[int], hint: tuple[int, int] | None = None
                  ) -> tuple[int, int] | None:
    K = _width(cols)
    order = range(G.n)
    if hint is not None:
        order = [hint[0]] + [x for x in range(G.n) if x != hint[0]]
    for u in order:
        tree = _walk_tree(G, cols, K, u)
        parent = tree[0]
        targets = range(G.n)
        if hint is not None and u == hint[0]:
            targets = [hint[1]] + [x for x in range(G.n) if x != hint[1]]
        for v in targets:
            if v == u:
                continue
            if not any(parent[v * K + a] != -2 for a in range(1, K)):
                return (min(u, v), max(u, v))
        for v in targets:
            if v == u or (v < u and hint is None):
                continue
            if _find_path(G, cols, K, u, v, tree=tree) is None:
                return (min(u, v), max(u, v))
    return None


def _optimistic_failing_pair(G: Graph, cols: Sequence[int], K: int,
                             hint: int | None = None) -> tuple[int, int] | None:
    """Walk reachability treating colour 0 as a wildcard; a miss here is a miss
    for every completion of the partial colouring."""
    n = G.n
    order = range(n) if hint is None else [hint] + [x for x in range(n) if x != hint]
    for u in order:
        parent, visit = _walk_tree(G, cols, K, u)
        reached = 1 << u
        for s in visit:
            reached |= 1 << (s // K)
        if reached != (1 << n) - 1:
            for v in range(n):
                if not reached >> v & 1:
                    return (min(u, v), max(u, v))
    return None


# -- public predicates ----------------------------------------------------------


def is_proper_path(G: Graph, c: Coloring, path: Sequence[int]) -> bool:
    cols = _cols(G, c)
    if not path:
        raise GraphError("path must contain at least one vertex")
    if len(set(path)) != len(path):
        raise GraphError("path repeats a vertex")
    prev = None
    for x, y in zip(path, path[1:]):
        if not G.has_edge(x, y):
            raise GraphError(f"({x}, {y}) is not an edge")
        col = cols[G.eid(x, y)]
        if col == prev:
            return False
        prev = col
    return True


def exists_proper_path(G: Graph, c: Coloring, u: int, v: int) -> bool:
    if not (0 <= u < G.n and 0 <= v < G.n):
        raise GraphError("vertex out of range")
    return find_proper_path(G, c, u, v) is not None


def walk_state_count(G: Graph, c: Coloring, u: int) -> int:
    """Number of (vertex, colour) states the walk search visits from ``u``."""
    cols = _cols(G, c)
    return len(_walk_tree(G, cols, _width(cols), u)[1])


@dataclass(frozen=True)
class CheckResult:
    proper_connected: bool
    failing_pair: tuple[int, int] | None = None
    reason: str = "ok"  # ok | disconnected | no-proper-path


def check_proper_connection(G: Graph, c: Coloring) -> CheckResult:
    cols = _cols(G, c)
    if not is_connected(G):
        comps = components(G)
        pair = (comps[0][0], comps[1][0]) if len(comps) > 1 else None
        return CheckResult(False, pair, "disconnected")
    bad = _failing_pair(G, cols)
    if bad is not None:
        return CheckResult(False, bad, "no-proper-path")
    return CheckResult(True)


def is_proper_connected(G: Graph, c: Coloring) -> bool:
    return check_proper_connection(G, c).proper_connected


@dataclass(frozen=True)
class StartEndSet:
    u: int
    v: int
    pairs: frozenset[tuple[int, int]]

    def __contains__(self, item) -> bool:
        return item in self.pairs

    def crossing(self) -> bool:
        """Two members differing in both start and end colour."""
        ps = sorted(self.pairs)
        return any(s1 != s2 and e1 != e2 for i, (s1, e1) in enumerate(ps) for s2, e2 in ps[i + 1:])


def _candidate_pairs(G, cols, K, u, v) -> set[tuple[int, int]]:
    out = set()
    for s in sorted({cols[e] for _, e in G.inc[u]}):
        parent, _ = _walk_tree(G, cols, K, u, start=s)
        for a in range(1, K):
            if parent[v * K + a] != -2:
                out.add((s, a))
    return out


def start_end_pairs(G: Graph, c: Coloring, u: int, v: int) -> StartEndSet:
    cols = _cols(G, c)
    if u == v:
        raise GraphError("start/end pairs need distinct vertices")
    K = _width(cols)
    if K - 1 > MAX_START_END_COLORS:
        raise GraphError(f"start_end_pairs supports at most {MAX_START_END_COLORS} colours")
    pairs = frozenset(p for p in _candidate_pairs(G, cols, K, u, v)
                      if _find_path(G, cols, K, u, v, p[0], p[1]) is not None)
    return StartEndSet(u, v, pairs)


def _pair_is_strong(G, cols, K, u, v) -> bool:
    cand = _candidate_pairs(G, cols, K, u, v)
    confirmed: dict[tuple[int, int], bool] = {}

    def ok(p):
        if p not in confirmed:
            confirmed[p] = _find_path(G, cols, K, u, v, p[0], p[1]) is not None
        return confirmed[p]

    cl = sorted(cand)
    for i, (s1, e1) in enumerate(cl):
        for s2, e2 in cl[i + 1:]:
            if s1 != s2 and e1 != e2 and ok((s1, e1)) and ok((s2, e2)):
                return True
    return False


def strong_failing_pair(G: Graph, c: Coloring) -> tuple[int, int] | None:
    cols = _cols(G, c)
    K = _width(cols)
    for u in range(G.n):
        for v in range(u + 1, G.n):
            if not _pair_is_strong(G, cols, K, u, v):
                return (u, v)
    return None


def has_strong_property(G: Graph, c: Coloring) -> bool:
    if G.n < 2:
        return True
    return strong_failing_pair(G, c) is None


# -- brute force (independent of the kernels above) ------------------------------


def enumerate_proper_paths(G: Graph, c: Coloring, u: int) -> Iterator[list[int]]:
    """Every simple proper path starting at ``u`` with at least one edge."""
    cols = _cols(G, c)

    def rec(path, last):
        x = path[-1]
        for y, e in G.inc[x]:
            if y in path or cols[e] == last:
                continue
            path.append(y)
            yield list(path)
            yield from rec(path, cols[e])
            path.pop()

    yield from rec([u], None)


def brute_proper_connected(G: Graph, c: Coloring) -> bool:
    """Proper connectivity by explicit simple-path enumeration (test oracle)."""
    cols = _cols(G, c)
    n = G.n
    for u in range(n):
        need = set(range(n)) - {u}

        def rec(path, last):
            x = path[-1]
            for y, e in G.inc[x]:
                if y in path or cols[e] == last:
                    continue
                need.discard(y)
                if not need:
                    return True
                path.append(y)
                if rec(path, cols[e]):
                    return True
                path.pop()
            return False

        if need and not rec([u], None):
            return False
    return True
