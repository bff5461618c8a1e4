"""Command-line interface: ``properconn <command> ...``.

Exit codes: 0 success, 1 counterexample (verify) or check failure,
2 input error, 3 budget-inconclusive.
"""

from __future__ import annotations

import argparse
import json
import multiprocessing
import sys
from pathlib import Path
from typing import Iterator

from . import graph as gc
from .census import THEOREMS, connected_graphs
from .certify import (
    certify_pc2,
    color_bridge_block_path,
    color_from_hamiltonian_path,
    format_fingerprints,
    hamiltonian_path,
    parse_fingerprints,
)
from .colorpath import EdgeColoring, check_proper_connection, has_strong_property, strong_failing_pair
from .decomp import bridge_block_tree, leaf_blocks, max_tree_degree
from .errors import BudgetExceeded, FormatError, GraphError, WitnessError
from .exact import DEFAULT_BUDGET, pc_exact
from .report import TSV_HEADER, analyze, error_record
from .spanning import EXACT_MAX_N, fact1_holds, local_search_bipartite_spanning, max_bipartite_spanning_exact
from .verify import run_verification

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


# -- input helpers --------------------------------------------------------------------


def _read_text(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _looks_like_edge_list(text: str) -> bool:
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            toks = line.split()
            return len(toks) == 2 and all(t.isdigit() for t in toks)
    return False


def iter_graphs(text: str) -> Iterator[tuple[int, gc.Graph | FormatError]]:
    """One edge-list document, or one graph6 graph per non-blank line."""
    if _looks_like_edge_list(text):
        try:
            yield 1, gc.parse_edge_list(text)
        except FormatError as exc:
            yield exc.line or 1, exc
        return
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            yield lineno, gc.parse_graph6(line)
        except FormatError as exc:
            yield lineno, exc


def _single_graph(path: str | None) -> gc.Graph:
    items = list(iter_graphs(_read_text(path)))
    if len(items) != 1:
        raise InputError(f"expected exactly one graph, found {len(items)}")
    lineno, G = items[0]
    if isinstance(G, Exception):
        raise InputError(f"line {lineno}: {G}")
    return G


def read_coloring(text: str, G: gc.Graph) -> EdgeColoring:
    rows = [r.split("#", 1)[0].strip() for r in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows:
        raise InputError("empty coloring file")
    try:
        k = int(rows[0])
        colors = [int(r) for r in rows[1:]]
    except ValueError:
        raise InputError("coloring file must hold integers: 'k' then one colour per line") from None
    if len(colors) != G.m:
        raise InputError(f"coloring length mismatch: {len(colors)} colours for {G.m} edges")
    try:
        return EdgeColoring.of(G, colors, k)
    except GraphError as exc:
        raise InputError(str(exc)) from None


def format_coloring(c: EdgeColoring) -> str:
    return "\n".join([str(c.k)] + [str(x) for x in c.colors]) + "\n"


def _emit(obj) -> None:
    print(json.dumps(obj, separators=(",", ":"), default=str))


# -- commands -------------------------------------------------------------------------


def _load_exceptions(path: str | None):
    if path is None:
        return None
    try:
        return tuple(parse_fingerprints(_read_text(path)))
    except GraphError as exc:
        raise InputError(str(exc)) from None


def _analyze_job(args):
    G, budget, witness, exceptions, timing = args
    try:
        return analyze(G, budget=budget, witness=witness, exceptions=exceptions, timing=timing)
    except (GraphError, WitnessError) as exc:  # bad input, or a certificate the solver contradicts
        return exc


def cmd_analyze(a) -> int:
    exceptions = _load_exceptions(a.exceptions)
    items = list(iter_graphs(_read_text(a.input)))
    graphs = [(ln, G) for ln, G in items if not isinstance(G, Exception)]
    jobs = [(G, a.budget, a.witness, exceptions, a.timing) for _, G in graphs]
    if a.jobs > 1:
        with multiprocessing.Pool(a.jobs) as pool:
            reports = iter(list(pool.imap(_analyze_job, jobs, chunksize=4)))  # input order
    else:
        reports = map(_analyze_job, jobs)
    status = EXIT_OK
    if a.format == "tsv":
        print(TSV_HEADER)
    for lineno, G in items:
        if isinstance(G, Exception):
            status = EXIT_INPUT
            msg = str(G)
            if a.format == "tsv":
                print(f"#error\tline {lineno}\t{msg}")
            else:
                _emit(error_record(lineno, msg))
            continue
        rep = next(reports)
        if isinstance(rep, Exception):
            fail = EXIT_FAIL if isinstance(rep, WitnessError) else EXIT_INPUT
            status = fail if status in (EXIT_OK, EXIT_BUDGET) else status
            _emit(error_record(lineno, str(rep)))
            continue
        if rep.pc is None and status == EXIT_OK:
            status = EXIT_BUDGET
        print(rep.tsv_line() if a.format == "tsv" else rep.json_line())
    return status


def _orders(text: str) -> list[int]:
    out: list[int] = []
    for part in text.split(","):
        lo, _, hi = part.partition("-")
        try:
            out.extend(range(int(lo), int(hi or lo) + 1))
        except ValueError:
            raise InputError(f"bad order range {text!r} (use e.g. 5-7 or 6,8)") from None
    return out


def cmd_verify(a) -> int:
    orders = _orders(a.orders)
    stream = None
    if a.source == "stream":
        stream = []
        for lineno, G in iter_graphs(_read_text(a.input)):
            if isinstance(G, Exception):
                raise InputError(f"line {lineno}: {G}")
            stream.append(G)
    try:
        s = run_verification(a.theorem, orders, source=a.source, stream=stream,
                             budget=a.budget, jobs=a.jobs)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out = s.to_json()
    if not a.timing:
        out["elapsed_ms"] = 0.0
    _emit(out)
    if a.write_exceptions:
        Path(a.write_exceptions).write_text(format_fingerprints(s.fingerprints()))
    if s.counterexamples:
        return EXIT_FAIL
    return EXIT_BUDGET if s.inconclusive else EXIT_OK


GENERATORS = {
    "complete": (gc.complete, 1),
    "complete-bipartite": (gc.complete_bipartite, 2),
    "path": (gc.path, 1),
    "cycle": (gc.cycle, 1),
    "star": (gc.star, 1),
    "extremal-general": (gc.extremal_general, 1),
    "extremal-bipartite": (gc.extremal_bipartite, 1),
}


def cmd_generate(a) -> int:
    if a.family == "connected":
        if len(a.params) != 1:
            raise InputError("connected takes one parameter: the order")
        for G in connected_graphs(a.params[0]):
            print(gc.to_graph6(G))
        return EXIT_OK
    fn, arity = GENERATORS[a.family]
    if len(a.params) != arity:
        raise InputError(f"{a.family} takes {arity} integer parameter(s)")
    try:
        G = fn(*a.params)
    except GraphError as exc:
        raise InputError(str(exc)) from None
    print(gc.to_graph6(G))
    return EXIT_OK


def _color(G: gc.Graph, strategy: str, budget: int) -> EdgeColoring | None:
    if strategy == "hamiltonian":
        try:
            p = hamiltonian_path(G)
        except BudgetExceeded as exc:
            raise InputError(f"hamiltonian: {exc}") from None
        if p is None:
            raise InputError("hamiltonian: graph is not traceable")
        return color_from_hamiltonian_path(G, p)
    if strategy == "corollary21":
        try:
            return color_bridge_block_path(G)
        except GraphError as exc:
            raise InputError(f"corollary21: {exc}") from None
    if strategy == "exact":
        res = pc_exact(G, budget)
        return res.witness if res.status == "exact" else None
    for cert in certify_pc2(G, budget=budget):
        if cert.witness is not None and cert.applies:
            return cert.witness
    res = pc_exact(G, budget)
    return res.witness if res.status == "exact" else None


def cmd_color(a) -> int:
    G = _single_graph(a.input)
    if G.n < 2 or not gc.is_connected(G):
        raise InputError("colouring needs a connected graph with n >= 2")
    c = _color(G, a.strategy, a.budget)
    if c is None:
        print("undecided: exact search exceeded the budget", file=sys.stderr)
        return EXIT_BUDGET
    if not check_proper_connection(G, c).proper_connected:
        raise AssertionError("refusing to emit an unverified colouring")
    text = format_coloring(c)
    if a.output:
        Path(a.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_check_coloring(a) -> int:
    G = _single_graph(a.graph)
    c = read_coloring(_read_text(a.coloring), G)
    res = check_proper_connection(G, c)
    out = {"proper_connected": res.proper_connected,
           "strong_property": res.proper_connected and has_strong_property(G, c)}
    if not res.proper_connected:
        out["failing_pair"] = list(res.failing_pair) if res.failing_pair else None
        out["reason"] = res.reason
    elif not out["strong_property"]:
        out["strong_failing_pair"] = list(strong_failing_pair(G, c))
    _emit(out)
    return EXIT_OK if res.proper_connected else EXIT_FAIL


def cmd_decompose(a) -> int:
    G = _single_graph(a.input)
    try:
        T = bridge_block_tree(G)
    except GraphError as exc:
        raise InputError(str(exc)) from None
    _emit({
        "blocks": [sorted(b) for b in T.blocks],
        "bridges": [list(G.edges[e]) for e in T.bridges],
        "bridge_indices": list(T.bridges),
        "tree_degree": max_tree_degree(T),
        "leaf_blocks": leaf_blocks(T),
    })
    return EXIT_OK


def cmd_spanning(a) -> int:
    G = _single_graph(a.input)
    method = a.method
    if method == "auto":
        method = "exact" if G.n <= EXACT_MAX_N else "local"
    try:
        S = (max_bipartite_spanning_exact(G) if method == "exact"
             else local_search_bipartite_spanning(G, seed=a.seed))
    except GraphError as exc:
        raise InputError(str(exc)) from None
    U, W = S.parts()
    f1 = fact1_holds(G, S)
    _emit({
        "method": method,
        "U": U, "W": W,
        "kept_edges": list(S.kept),
        "edge_count": S.edge_count,
        "tree_degree": S.tree_degree,
        "fact1": f1.holds,
        "fact1_violation": None if f1.holds else f1.bridge,
    })
    return EXIT_OK


# -- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="max edges for exhaustive search (default %(default)s)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--format", choices=("json", "tsv"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--timing", action="store_true",
                        help="record wall-clock times (output is then not byte-stable)")

    p = argparse.ArgumentParser(prog="properconn", description="Proper connection number toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("analyze", parents=[common], help="pc with certificates for each input graph")
    s.add_argument("input", nargs="?", help="graph6 lines or an edge-list file (default stdin)")
    s.add_argument("--witness", action="store_true", help="always attach a checkable colouring")
    s.add_argument("--exceptions", help="fingerprint file overriding the bundled one")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("verify", parents=[common], help="verify a theorem at small orders")
    s.add_argument("theorem", choices=THEOREMS)
    s.add_argument("orders", help="e.g. 5-7, or 8 with --source stream")
    s.add_argument("--source", choices=("internal", "stream"), default="internal")
    s.add_argument("--input", help="graph6 stream for --source stream (default stdin)")
    s.add_argument("--write-exceptions", metavar="FILE", help="write exception fingerprints")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("generate", parents=[common], help="emit graph6 for a family")
    s.add_argument("family", choices=sorted(GENERATORS) + ["connected"])
    s.add_argument("params", type=int, nargs="*")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("color", parents=[common], help="write a proper connection colouring")
    s.add_argument("input", nargs="?")
    s.add_argument("--strategy", choices=("auto", "hamiltonian", "corollary21", "exact"), default="auto")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_color)

    s = sub.add_parser("check-coloring", parents=[common], help="check a colouring file")
    s.add_argument("graph")
    s.add_argument("coloring")
    s.set_defaults(func=cmd_check_coloring)

    s = sub.add_parser("decompose", parents=[common], help="bridge-block tree as JSON")
    s.add_argument("input", nargs="?")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("spanning", parents=[common], help="max bipartite spanning subgraph")
    s.add_argument("input", nargs="?")
    s.add_argument("--method", choices=("auto", "exact", "local"), default="auto")
    s.set_defaults(func=cmd_spanning)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
