"""Exhaustive small-order verification of the pc = 2 sufficient conditions.

Every graph satisfying a theorem's hypothesis is classified as confirming
(pc = 2), an exception (pc != 2 where the statement allows one), a
counterexample, or inconclusive (solver budget exhausted). Classification
uses only constructive certificates and the exact solver, never the theorem
under test.
"""

from __future__ import annotations

import multiprocessing
import time
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .census import (
    BIPARTITE_MAX_N,
    BIPARTITE_THEOREMS,
    LABELED_MAX_N,
    THEOREMS,
    bipartite_graphs,
    graph_from_mask,
    labeled_survivors,
    satisfies,
)
from .certify import Certificate, Fingerprint, Tag, certify_pc2, fingerprint
from .exact import DEFAULT_BUDGET
from .graph import Graph, to_graph6
from .iso import canonical_form, canonical_graph

# orders at which each statement excludes small exceptional graphs
LEGAL_EXCEPTIONS = {"3.1": {6, 7, 8}, "2.4": {7, 8}, "4.1": set(), "2.5": set()}


@dataclass
class VerificationSummary:
    theorem: str
    orders: list[int]
    scanned: int = 0
    satisfying: int = 0
    confirming: int = 0
    exceptions: dict[int, list[str]] = field(default_factory=dict)
    counterexamples: list[str] = field(default_factory=list)
    inconclusive: list[str] = field(default_factory=list)
    elapsed: float = 0.0
    exception_graphs: list[Graph] = field(default_factory=list, repr=False)

    @property
    def passed(self) -> bool:
        return not self.counterexamples and not self.inconclusive

    def exception_counts(self) -> dict[int, int]:
        return {n: len(v) for n, v in sorted(self.exceptions.items())}

    def fingerprints(self) -> list[Fingerprint]:
        return [fingerprint(G, self.theorem) for G in self.exception_graphs]

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "theorem": self.theorem,
            "orders": self.orders,
            "scanned": self.scanned,
            "satisfying": self.satisfying,
            "confirming": self.confirming,
            "exceptions": {str(n): v for n, v in sorted(self.exceptions.items())},
            "counterexamples": self.counterexamples,
            "inconclusive": self.inconclusive,
            "elapsed_ms": round(self.elapsed * 1000, 3),
            "passed": self.passed,
        }


def classify(G: Graph, budget: int = DEFAULT_BUDGET) -> tuple[str, Certificate]:
    cert = certify_pc2(G, theorems=False, budget=budget)[-1]
    if cert.tag is Tag.UNDECIDED:
        return "inconclusive", cert
    return ("confirming" if cert.pc == 2 else "deviating"), cert


def _classify_job(args):
    G, budget = args
    return classify(G, budget)[0]


class _Tally:
    def __init__(self, summary: VerificationSummary):
        self.s = summary
        self.seen: set = set()

    def record(self, G: Graph, verdict: str) -> None:
        s = self.s
        if verdict == "confirming":
            s.confirming += 1
            return
        key = canonical_form(G)
        if key in self.seen:  # isomorphic copies are listed once
            return
        self.seen.add(key)
        g6 = to_graph6(canonical_graph(G))
        if verdict == "inconclusive":
            s.inconclusive.append(g6)
        elif G.n in LEGAL_EXCEPTIONS[s.theorem]:
            s.exceptions.setdefault(G.n, []).append(g6)
            s.exception_graphs.append(canonical_graph(G))
        else:
            s.counterexamples.append(g6)


def _map(graphs: Iterable[Graph], budget: int, jobs: int) -> Iterator[tuple[Graph, str]]:
    if jobs <= 1:
        for G in graphs:
            yield G, classify(G, budget)[0]
        return
    graphs = list(graphs)
    with multiprocessing.Pool(jobs) as pool:
        verdicts = pool.imap(_classify_job, ((G, budget) for G in graphs), chunksize=16)
        yield from zip(graphs, verdicts)


def _labeled_order(n: int, theorem: str, tally: _Tally, budget: int, jobs: int) -> None:
    """All labelled graphs on n vertices.

    Traceable survivors are confirming by the Hamiltonian-path construction
    (noncomplete traceable graphs have pc = 2); the others are deduplicated
    up to isomorphism before the solver sees them, with each labelled copy
    inheriting its class verdict.
    """
    s = tally.s
    reps: dict = {}
    copies: dict = {}
    for scanned, masks, trace in labeled_survivors(n, theorem):
        s.scanned += scanned
        s.satisfying += len(masks)
        s.confirming += int(trace.sum())
        for mask in masks[~trace].tolist():
            G = graph_from_mask(n, mask)
            key = canonical_form(G)
            reps.setdefault(key, G)
            copies[key] = copies.get(key, 0) + 1
    for (key, G), (_, verdict) in zip(reps.items(), _map(reps.values(), budget, jobs)):
        if verdict == "confirming":
            s.confirming += copies[key]
        else:
            tally.record(G, verdict)


def run_verification(theorem: str, orders: Iterable[int], *, source: str = "internal",
                     stream: Iterable[Graph] | None = None, budget: int = DEFAULT_BUDGET,
                     jobs: int = 1) -> VerificationSummary:
    """Verify one theorem over the given orders.

    ``source="internal"`` enumerates graphs in-process (labelled graphs up to
    order 7 for the general theorems, bipartite graphs up to order 10 for the
    bipartite ones). ``source="stream"`` scans the supplied graphs, keeping
    those whose order is listed.
    """
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem!r}; choose from {', '.join(THEOREMS)}")
    orders = sorted(set(orders))
    s = VerificationSummary(theorem, orders)
    tally = _Tally(s)
    t0 = time.perf_counter()
    if source == "internal":
        for n in orders:
            if theorem in BIPARTITE_THEOREMS:
                if n > BIPARTITE_MAX_N:
                    raise ValueError(f"internal bipartite enumeration covers n <= {BIPARTITE_MAX_N}")
                graphs = []
                for G in bipartite_graphs(n):
                    s.scanned += 1
                    if satisfies(theorem, G):
                        s.satisfying += 1
                        graphs.append(G)
                for G, verdict in _map(graphs, budget, jobs):
                    tally.record(G, verdict)
            else:
                if n > LABELED_MAX_N:
                    raise ValueError(f"internal enumeration covers n <= {LABELED_MAX_N}; "
                                     f"pipe a graph6 stream for larger orders")
                _labeled_order(n, theorem, tally, budget, jobs)
    elif source == "stream":
        if stream is None:
            raise ValueError("stream source needs graphs")
        wanted = set(orders)

        def selected():
            for G in stream:
                if G.n not in wanted:
                    continue
                s.scanned += 1
                if satisfies(theorem, G):
                    s.satisfying += 1
                    yield G

        for G, verdict in _map(selected(), budget, jobs):
            tally.record(G, verdict)
    else:
        raise ValueError(f"unknown source {source!r}")
    s.elapsed = time.perf_counter() - t0
    return s
