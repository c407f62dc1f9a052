"""Batch experiments: the complete-graph table and conjecture scans.

Rows are computed one after another and returned in input order. Nothing
time-dependent is written into a row, so reruns with the same seed and a
node-only budget give identical output.
"""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .bounds import conjectured_order_bound, proven_upper_bound
from .coloring import TotalColoring, lower_bound
from .construct import compose_vsdtc, forest_vsdtc, tree_vsdtc_r
from .errors import ExtensionFailure, InvalidInput, SearchTimeout
from .extension import extend_degenerate_vsdtc
from .graph import Graph, complete_graph, degeneracy, generate, has_isolated_edge, is_forest, is_tree
from .io import format_graph
from .solver import SearchBudget, SolveResult, chromatic_number, exists_coloring

COLUMNS = (
    "family",
    "n",
    "m",
    "delta_max",
    "k_degeneracy",
    "r",
    "lower",
    "exact",
    "status",
    "constructive",
    "bound",
)


@dataclass
class ExperimentRow:
    family: str
    n: int
    m: int
    delta_max: int
    k_degeneracy: int
    r: int
    lower: int
    exact: Optional[int]
    status: str
    constructive: Optional[int]
    bound: Optional[int]

    @property
    def chain_ok(self) -> bool:
        """lower <= exact <= constructive <= bound over the values present."""
        chain = [x for x in (self.lower, self.exact, self.constructive, self.bound) if x is not None]
        return all(a <= b for a, b in zip(chain, chain[1:]))

    def as_dict(self) -> dict:
        d = {c: getattr(self, c) for c in COLUMNS}
        d["chain_ok"] = self.chain_ok
        return d


def best_constructive(G: Graph, r: int) -> tuple[TotalColoring, str]:
    """Fewest-colors output among the constructors that apply to ``G`` at ``r``."""
    candidates = [(compose_vsdtc(G, r), "compose")]
    if G.m and r == 1:
        k = degeneracy(G).k
        if is_forest(G):
            candidates.append((forest_vsdtc(G), "forest"))
        elif k <= 3:
            try:
                candidates.append((extend_degenerate_vsdtc(G, k), "degenerate"))
            except (ExtensionFailure, SearchTimeout):
                pass
    if r in (2, 3) and is_tree(G) and G.max_degree >= r:
        candidates.append((tree_vsdtc_r(G, r), "tree"))
    return min(candidates, key=lambda c: c[0].colors_used())


def proven_lower(G: Graph, r: int, res: SolveResult) -> int:
    """Lower bound sharpened by every probe that exhausted its search."""
    lb = lower_bound(G, r)
    for p in res.probes:
        if p.outcome == "none":
            lb = max(lb, p.kappa + 1)
    return lb


def measure(G: Graph, r: int, family: str, budget: Optional[SearchBudget] = None) -> tuple[ExperimentRow, SolveResult]:
    res = chromatic_number(G, r, budget)
    f, _ = best_constructive(G, r)
    row = ExperimentRow(
        family=family,
        n=G.n,
        m=G.m,
        delta_max=G.max_degree,
        k_degeneracy=degeneracy(G).k,
        r=r,
        lower=proven_lower(G, r, res),
        exact=res.chromatic_number,
        status=res.status,
        constructive=f.colors_used(),
        bound=proven_upper_bound(G, r),
    )
    return row, res


def run_table(n_range: Iterable[int], r: int = 1, budget: Optional[SearchBudget] = None) -> list[ExperimentRow]:
    """Rows for complete graphs K_n. A row whose search runs out of budget
    keeps ``exact=None`` and the bracket [lower, constructive]."""
    rows = []
    for n in n_range:
        if n < 3:
            raise InvalidInput(f"table rows need n >= 3, got {n}")
        row, _ = measure(complete_graph(n), r, f"complete:{n}", budget)
        rows.append(row)
    return rows


@dataclass
class ScanRecord:
    row: ExperimentRow
    seed: int
    order_margin: Optional[int]  # n + ceil(log2 n) + 1 - chi
    degree_excess: Optional[int]  # chi - 2*Delta


@dataclass
class ScanSummary:
    family: str
    r: int
    count: int
    seed: int
    records: list[ScanRecord] = field(default_factory=list)
    candidates: list[dict] = field(default_factory=list)

    @property
    def exact_count(self) -> int:
        return sum(1 for x in self.records if x.order_margin is not None)

    @property
    def timeouts(self) -> int:
        return len(self.records) - self.exact_count

    @property
    def order_violations(self) -> int:
        return sum(1 for x in self.records if x.order_margin is not None and x.order_margin < 0)

    @property
    def max_degree_excess(self) -> Optional[int]:
        return max((x.degree_excess for x in self.records if x.degree_excess is not None), default=None)

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "r": self.r,
            "count": self.count,
            "seed": self.seed,
            "exact": self.exact_count,
            "timeouts": self.timeouts,
            "order_violations": self.order_violations,
            "min_order_margin": min(
                (x.order_margin for x in self.records if x.order_margin is not None), default=None
            ),
            "max_degree_excess": self.max_degree_excess,
            "candidates": self.candidates,
            "rows": [dict(x.row.as_dict(), seed=x.seed, order_margin=x.order_margin, degree_excess=x.degree_excess) for x in self.records],
        }


def _family_params(family: str, n: int, rng: random.Random, k: int, p: float) -> tuple:
    if family == "complete_bipartite":
        a = rng.randint(1, max(1, n - 1))
        return (a, max(1, n - a))
    if family == "random_k_degenerate":
        return (n, k)
    if family == "random_connected":
        return (n, p)
    return (n,)


def certify_absence(G: Graph, r: int, kappa: int, budget: Optional[SearchBudget] = None) -> dict:
    """Re-run an exhaustive search at ``kappa``; the record says whether it came back empty."""
    stats: list = []
    try:
        w = exists_coloring(G, r, kappa, budget, stats=stats)
        outcome = "none" if w is None else "found"
    except SearchTimeout:
        outcome = "timeout"
    return {
        "kappa": kappa,
        "outcome": outcome,
        "nodes": sum(s.nodes for s in stats),
    }


def run_scan(
    family: str,
    count: int,
    seed: int = 0,
    r: int = 1,
    budget: Optional[SearchBudget] = None,
    min_n: int = 3,
    max_n: int = 10,
    k: int = 2,
    p: float = 0.3,
) -> ScanSummary:
    """Sample ``count`` graphs and record both conjecture margins for each.

    Only exhausted searches count: a timed-out instance has no margin. A
    negative order margin is re-checked by a second exhaustive search at the
    conjectured value and reported as a candidate with that certificate.
    """
    if count < 1:
        raise InvalidInput("count must be >= 1")
    if min_n < 3 or max_n < min_n:
        raise InvalidInput(f"need 3 <= min_n <= max_n, got {min_n}..{max_n}")
    rng = random.Random(seed)
    summary = ScanSummary(family, r, count, seed)
    for _ in range(count):
        n = rng.randint(min_n, max_n)
        gseed = rng.randrange(2**31)
        params = _family_params(family, n, rng, k, p)
        G = generate(family, *params, seed=gseed)
        if has_isolated_edge(G):
            raise InvalidInput(f"{family}{params} produced an isolated edge")
        desc = f"{family}:{','.join(str(x) for x in params)}"
        row, res = measure(G, r, desc, budget)
        chi = row.exact
        margin = conjectured_order_bound(G.n) - chi if chi is not None else None
        excess = chi - 2 * G.max_degree if chi is not None else None
        summary.records.append(ScanRecord(row, gseed, margin, excess))
        if margin is not None and margin < 0:
            summary.candidates.append(
                {
                    "family": desc,
                    "seed": gseed,
                    "r": r,
                    "graph": format_graph(G),
                    "certificate": certify_absence(G, r, conjectured_order_bound(G.n), budget),
                }
            )
    return summary


def rows_to_csv(rows: Iterable[ExperimentRow]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for row in rows:
        w.writerow({c: ("" if getattr(row, c) is None else getattr(row, c)) for c in COLUMNS})
    return buf.getvalue()


def rows_to_json(rows: Iterable[ExperimentRow]) -> str:
    return json.dumps([row.as_dict() for row in rows], indent=2)


def rows_to_text(rows: Iterable[ExperimentRow]) -> str:
    rows = list(rows)
    head = ("graph", "n", "m", "D", "k", "r", "lower", "exact", "constr", "bound", "status")
    body = [
        (
            x.family,
            x.n,
            x.m,
            x.delta_max,
            x.k_degeneracy,
            x.r,
            x.lower,
            "-" if x.exact is None else x.exact,
            "-" if x.constructive is None else x.constructive,
            "-" if x.bound is None else x.bound,
            x.status,
        )
        for x in rows
    ]
    widths = [max(len(str(t[i])) for t in [head] + body) for i in range(len(head))]
    lines = ["  ".join(str(t[i]).rjust(widths[i]) for i in range(len(head))) for t in [head] + body]
    return "\n".join(lines) + "\n"


__all__ = [
    "COLUMNS",
    "ExperimentRow",
    "ScanRecord",
    "ScanSummary",
    "best_constructive",
    "measure",
    "run_table",
    "run_scan",
    "certify_absence",
    "rows_to_csv",
    "rows_to_json",
    "rows_to_text",
]
