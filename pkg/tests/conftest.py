import random

import pytest
from hypothesis import strategies as st

from properconn.graph import Graph, from_edge_list, is_connected


def random_connected(rng: random.Random, n: int, p: float = 0.4) -> Graph:
    """Random spanning tree plus independent extra edges."""
    order = list(range(n))
    rng.shuffle(order)
    pairs = [(order[i], order[rng.randrange(i)]) for i in range(1, n)]
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                pairs.append((u, v))
    return from_edge_list(n, pairs)


def all_labeled_graphs(n: int):
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    for mask in range(1 << len(pairs)):
        yield from_edge_list(n, [p for k, p in enumerate(pairs) if mask >> k & 1])


@st.composite
def connected_graphs(draw, min_n=2, max_n=8):
    n = draw(st.integers(min_n, max_n))
    parents = [draw(st.integers(0, i - 1)) for i in range(1, n)]
    extra = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=2 * n))
    pairs = [(i, parents[i - 1]) for i in range(1, n)] + [(u, v) for u, v in extra if u != v]
    G = from_edge_list(n, pairs)
    assert is_connected(G)
    return G


@pytest.fixture
def rng():
    return random.Random(20240601)


# one line per acceptance criterion, repeated in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def acceptance_line(criterion: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
