"""Exact chromatic number by backtracking over total colorings.

Elements are numbered ``0..n-1`` for vertices and ``n..n+m-1`` for edges.
The search assigns them in a fixed static order. Properness is enforced on
assignment; the distinguishing constraint for a pair is checked at the first
position where both incidence sets are fully colored. Color symmetry is
broken by only ever introducing the smallest unused color.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass, field
from typing import Optional

from .coloring import TotalColoring, lower_bound
from .errors import InvalidInput, SearchTimeout
from .graph import Graph, bfs_distances, components, require_no_isolated_edge

EXACT = "exact"
TIMEOUT = "timeout"


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = 10**7
    max_seconds: float = 60.0

    def __post_init__(self):
        if self.max_nodes <= 0 or self.max_seconds <= 0:
            raise InvalidInput("search budget must be positive")


@dataclass
class ProbeStats:
    kappa: int
    outcome: str  # "found", "none" or "timeout"
    nodes: int
    seconds: float


@dataclass
class SolveResult:
    chromatic_number: Optional[int]
    witness: Optional[TotalColoring]
    lower_bound_used: int
    lower_bound_source: str
    status: str
    probes: list[ProbeStats] = field(default_factory=list)
    seconds: float = 0.0
    upper_bound: Optional[int] = None

    @property
    def nodes(self) -> int:
        return sum(p.nodes for p in self.probes)


def _bfs_sequence(G: Graph) -> list[int]:
    """BFS per component, started at and expanding toward high-degree vertices first."""
    by_degree = lambda u: (-G.degree(u), u)  # noqa: E731
    seq: list[int] = []
    seen = [False] * G.n
    for s in sorted(range(G.n), key=by_degree):
        if seen[s]:
            continue
        seen[s] = True
        queue = [s]
        for x in queue:
            for y in sorted(G.neighbors[x], key=by_degree):
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
        seq.extend(queue)
    return seq


def element_order(G: Graph) -> list[int]:
    """Static assignment order: a closed-neighborhood sweep.

    Vertices are visited in BFS order. Visiting ``u`` lists ``u`` and then,
    for each neighbor ``w``, ``w`` followed by the edge ``uw`` (skipping
    anything already listed). After the visit ``u`` is fully colored, so its
    distinguishing checks fire early.
    """
    seq = _bfs_sequence(G)
    pos = [0] * G.n
    for i, u in enumerate(seq):
        pos[u] = i
    out: list[int] = []
    listed = [False] * (G.n + G.m)

    def add(x):
        if not listed[x]:
            listed[x] = True
            out.append(x)

    for u in seq:
        add(u)
        for w, e in sorted(zip(G.neighbors[u], G.incident[u]), key=lambda t: pos[t[0]]):
            add(w)
            add(G.n + e)
    return out


def _conflicts(G: Graph, x: int) -> list[int]:
    n = G.n
    if x < n:
        return list(G.neighbors[x]) + [n + e for e in G.incident[x]]
    a, b = G.edges[x - n]
    out = [a, b]
    for u in (a, b):
        out.extend(n + e for e in G.incident[u] if n + e != x)
    return out


def _incidence(G: Graph, u: int) -> list[int]:
    return [u] + list(G.neighbors[u]) + [G.n + e for e in G.incident[u]]


class _Search:
    """One (G, r, kappa) probe. Not reusable across threads."""

    def __init__(self, G: Graph, r: int, kappa: int, budget: SearchBudget, prune: bool = True):
        self.G, self.r, self.kappa, self.budget, self.prune = G, r, kappa, budget, prune
        n = G.n
        N = n + G.m
        order = element_order(G)
        pos = [0] * N
        for i, x in enumerate(order):
            pos[x] = i
        self.order, self.N = order, N
        self.conf = [[pos[y] for y in _conflicts(G, x) if pos[y] < i] for i, x in enumerate(order)]
        inc = [sorted(pos[y] for y in _incidence(G, u)) for u in range(n)]
        good_at = [p[-1] for p in inc]
        near = [[w for w in bfs_distances(G, u, r) if w != u] for u in range(n)]
        # checks[i]: vertices completed at position i, with the already-complete vertices to compare against
        self.checks: list[list[tuple[int, list[int], list[int]]]] = [[] for _ in range(N)]
        for u in sorted(range(n), key=lambda u: (good_at[u], u)):
            i = good_at[u]
            earlier = [w for w in near[u] if good_at[w] < i or (good_at[w] == i and w < u)]
            self.checks[i].append((u, earlier, inc[u]))
        # for the dominance prune: per position, pairs (u complete, w not yet) to look at
        self.watch: list[list[tuple[int, int, list[int]]]] = [[] for _ in range(N)]
        for u in range(n):
            i = good_at[u]
            for w in near[u]:
                if good_at[w] > i:
                    self.watch[i].append((u, w, inc[w]))
        self.nodes = 0
        self.col = [0] * N
        self.mask = [0] * n

    def run(self) -> Optional[list[int]]:
        self.deadline = time.monotonic() + self.budget.max_seconds
        if self.N == 0:
            return []
        limit = sys.getrecursionlimit()
        if limit < self.N + 100:
            sys.setrecursionlimit(self.N + 100)
        if self._rec(0, 0):
            out = [0] * self.N
            for i, x in enumerate(self.order):
                out[x] = self.col[i]
            return out
        return None

    def _doomed(self, i: int) -> bool:
        """True if some incomplete vertex is already forced to copy a complete neighbor's set.

        ``w``'s final set equals ``u``'s whenever the colored part of ``N<w>``
        covers ``u``'s set and every uncolored element of ``N<w>`` can only
        take colors inside it (its properness-forbidden colors are taken from
        elements colored so far, so the test is sound).
        """
        col, kappa, conf, mask = self.col, self.kappa, self.conf, self.mask
        full = (1 << (kappa + 1)) - 2
        for u, w, incw in self.watch[i]:
            mu = mask[u]
            part = 0
            open_ = []
            for p in incw:
                if p <= i:
                    part |= 1 << col[p]
                else:
                    open_.append(p)
            if part != mu:
                continue
            outside = full & ~mu
            for p in open_:
                forb = 0
                for q in conf[p]:
                    if q <= i:
                        forb |= 1 << col[q]
                if outside & ~forb:
                    break
            else:
                return True
        return False

    def _rec(self, i: int, maxc: int) -> bool:
        if i == self.N:
            return True
        self.nodes += 1
        if self.nodes & 4095 == 0:
            if self.nodes >= self.budget.max_nodes or time.monotonic() > self.deadline:
                raise SearchTimeout(f"budget exhausted at kappa={self.kappa}")
        col = self.col
        forb = 0
        for p in self.conf[i]:
            forb |= 1 << col[p]
        checks = self.checks[i]
        mask = self.mask
        top = min(self.kappa, maxc + 1)
        watch = self.prune and self.watch[i]
        for c in range(1, top + 1):
            if forb >> c & 1:
                continue
            col[i] = c
            ok = True
            for u, earlier, incp in checks:
                mk = 0
                for p in incp:
                    mk |= 1 << col[p]
                mask[u] = mk
                for w in earlier:
                    if mask[w] == mk:
                        ok = False
                        break
                if not ok:
                    break
            if ok and watch and self._doomed(i):
                ok = False
            if ok and self._rec(i + 1, c if c > maxc else maxc):
                return True
        col[i] = 0
        return False


def _to_coloring(G: Graph, kappa: int, flat: list[int]) -> TotalColoring:
    return TotalColoring(kappa, flat[: G.n], flat[G.n :])


def _check_args(G: Graph, r: int) -> None:
    if not isinstance(r, int) or r < 1:
        raise InvalidInput(f"r must be an integer >= 1, got {r!r}")
    require_no_isolated_edge(G)


def exists_coloring(
    G: Graph,
    r: int,
    kappa: int,
    budget: Optional[SearchBudget] = None,
    prune: bool = True,
    stats: Optional[list] = None,
) -> Optional[TotalColoring]:
    """A ``kappa``-coloring distinguishing pairs within distance ``r``, or None.

    None is returned only after the search space is exhausted; running out of
    budget raises :class:`SearchTimeout`. Disconnected inputs are solved per
    component.
    """
    _check_args(G, r)
    if kappa < 1:
        raise InvalidInput("kappa must be >= 1")
    budget = budget or SearchBudget()
    vc: list[int] = [0] * G.n
    ec: list[int] = [0] * G.m
    for H, vmap in components(G):
        t0 = time.monotonic()
        s = _Search(H, r, kappa, budget, prune)
        try:
            flat = s.run()
        except SearchTimeout as exc:
            if stats is not None:
                stats.append(ProbeStats(kappa, "timeout", s.nodes, time.monotonic() - t0))
            exc.stats = ProbeStats(kappa, "timeout", s.nodes, time.monotonic() - t0)
            raise
        if stats is not None:
            stats.append(ProbeStats(kappa, "none" if flat is None else "found", s.nodes, time.monotonic() - t0))
        if flat is None:
            return None
        for i, u in enumerate(vmap):
            vc[u] = flat[i]
        for j, (a, b) in enumerate(H.edges):
            ec[G.edge_index(vmap[a], vmap[b])] = flat[H.n + j]
    return TotalColoring(kappa, vc, ec)


def _lower_bound_tag(G: Graph, r: int, lb: int) -> str:
    return "max_degree+2 (two max-degree vertices within r)" if lb == G.max_degree + 2 else "max_degree+1"


def _solve_connected(H: Graph, r: int, budget: SearchBudget, prune: bool, probes: list, upper=None):
    """Return (value, witness) for a connected H; value None on timeout."""
    if H.m == 0:
        return 1, TotalColoring(1, [1] * H.n, [])
    kappa = lower_bound(H, r)
    ceiling = upper.palette_size if upper is not None else None
    while True:
        if ceiling is not None and kappa >= ceiling:
            return ceiling, upper
        try:
            w = exists_coloring(H, r, kappa, budget, prune, probes)
        except SearchTimeout:
            return None, None
        if w is not None:
            return kappa, w
        kappa += 1


def chromatic_number(
    G: Graph,
    r: int,
    budget: Optional[SearchBudget] = None,
    prune: bool = True,
    use_upper: bool = True,
) -> SolveResult:
    """Exact value over all components (the maximum of the per-component values).

    Each component is probed upward from its lower bound. When
    ``use_upper`` is set, a constructive coloring caps the probing: reaching
    its palette size proves optimality without a final search. A probe that
    exhausts the budget makes the whole result ``status == "timeout"``.
    """
    from .construct import compose_vsdtc  # circular: construct uses this module

    _check_args(G, r)
    budget = budget or SearchBudget()
    t0 = time.monotonic()
    lb = lower_bound(G, r)
    result = SolveResult(None, None, lb, _lower_bound_tag(G, r, lb), EXACT)
    vc: list[int] = [0] * G.n
    ec: list[int] = [0] * G.m
    best = 0
    for H, vmap in components(G):
        upper = compose_vsdtc(H, r) if use_upper and H.m else None
        value, w = _solve_connected(H, r, budget, prune, result.probes, upper)
        if value is None:
            result.status = TIMEOUT
            result.witness = None
            break
        best = max(best, value)
        for i, u in enumerate(vmap):
            vc[u] = w.vertex_colors[i]
        for j, (a, b) in enumerate(H.edges):
            ec[G.edge_index(vmap[a], vmap[b])] = w.edge_colors[j]
    if result.status == EXACT:
        result.chromatic_number = best if G.n else 0
        result.witness = TotalColoring(max(best, 1), vc, ec) if G.n else TotalColoring(1, [], [])
    result.seconds = time.monotonic() - t0
    return result


__all__ = [
    "SearchBudget",
    "SolveResult",
    "ProbeStats",
    "exists_coloring",
    "chromatic_number",
    "element_order",
]
