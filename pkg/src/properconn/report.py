"""Per-graph analysis reports (JSON lines or TSV)."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any

from .certify import Certificate, Tag, certify_pc2
from .colorpath import EdgeColoring, is_proper_connected
from .errors import WitnessError
from .exact import DEFAULT_BUDGET, pc_exact
from .graph import Graph, to_graph6

SCHEMA = 1
TSV_HEADER = "graph6\tn\tm\tpc\tlower\tupper\tchain\tk\twitness\telapsed_ms"


@dataclass
class PcReport:
    graph_id: str
    n: int
    m: int
    pc: int | None
    lower: int
    upper: int
    certificates: list[Certificate]
    witness: EdgeColoring | None = None
    elapsed_ms: float = 0.0
    extra: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        out: dict[str, Any] = {"schema": SCHEMA, "graph_id": self.graph_id, "n": self.n, "m": self.m}
        if self.pc is not None:
            out["pc"] = self.pc
        else:
            out["pc"] = {"lower": self.lower, "upper": self.upper}
        out["certificates"] = [
            {"tag": c.tag.value, "pc": c.pc, "constructive": c.constructive, "params": c.params}
            for c in self.certificates
        ]
        out["witness"] = (None if self.witness is None
                          else {"k": self.witness.k, "colors": list(self.witness.colors)})
        out["elapsed_ms"] = self.elapsed_ms
        return out

    def json_line(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"), default=str)

    def tsv_line(self) -> str:
        w = self.witness
        return "\t".join([
            self.graph_id, str(self.n), str(self.m),
            "" if self.pc is None else str(self.pc), str(self.lower), str(self.upper),
            ">".join(c.tag.value for c in self.certificates),
            "" if w is None else str(w.k),
            "" if w is None else ",".join(map(str, w.colors)),
            f"{self.elapsed_ms}",
        ])


def analyze(G: Graph, *, budget: int = DEFAULT_BUDGET, witness: bool = False,
            exceptions=None, timing: bool = True) -> PcReport:
    """Certificate chain for G, plus an exact-solver witness on request.

    With ``timing=False`` the elapsed field is zero so output is byte-stable.
    """
    t0 = time.perf_counter()
    chain = list(certify_pc2(G, budget=budget, exceptions=exceptions))
    last = chain[-1]
    if last.tag is Tag.UNDECIDED:
        pc, lower, upper = None, last.params["lower"], last.params["upper"]
    else:
        pc = lower = upper = last.pc
    wit = last.witness
    if witness and wit is None:
        res = pc_exact(G, budget)
        if res.status == "exact":
            chain.append(Certificate(Tag.EXACT_SEARCH, res.pc,
                                     {"lower_reason": res.bounds.lower_reason,
                                      "upper_reason": res.bounds.upper_reason}, res.witness))
            if pc is not None and res.pc != pc:
                raise WitnessError(f"exact solver gives pc={res.pc}, certificate claims {pc}")
            wit = res.witness
        else:
            chain.append(Certificate(Tag.UNDECIDED, None,
                                     {"lower": res.bounds.lower, "upper": res.bounds.upper}))
    # a witness on an Undecided report only certifies the upper bound
    if wit is not None and not is_proper_connected(G, wit):
        raise WitnessError("witness failed re-verification at emission")
    elapsed = round((time.perf_counter() - t0) * 1000, 3) if timing else 0.0
    return PcReport(to_graph6(G), G.n, G.m, pc, lower, upper, chain, wit, elapsed)


def error_record(line_no: int, message: str) -> dict:
    return {"schema": SCHEMA, "error": message, "line": line_no}
