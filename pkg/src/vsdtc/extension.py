"""Adjacent-distinguishing total coloring of k-degenerate graphs with k*Delta+3 colors.

The graph is peeled down to a handful of tiny components, those are solved
exactly inside the palette, and the peeled vertices are put back one at a
time in reverse order. Re-inserting ``v`` with live neighbors
``v_1 < ... < v_d`` works in ``d + 1`` steps:

* pick the vertex color ``c0`` (:func:`choose_safe_vertex_color`);
* color the pendant edges ``e_i = v v_i`` in order, each with the smallest
  color outside :func:`forbidden_colors_for_edge`. After step ``i`` the
  neighbor ``v_i`` is fully colored and distinguished from its neighbors.

The forbidden sets are computed exactly rather than from counts. Each part
carries a label naming the constraint behind it:

``proper``
    colors already on elements adjacent or incident to ``e_i``.
``neighbor``
    for each neighbor ``w`` of ``v_i`` other than ``v``, the at most one
    color that would give ``v_i`` the same set as ``w``.
``last-pair``
    at step ``d-1``: keeps ``v`` and ``v_d`` separable at the last step.
    If their sets are currently equal they must become unequal, otherwise
    their symmetric difference must stay at least 2.
``v-earlier``
    at the last step: ``v`` against the finished ``v_1..v_{d-1}``.
``v-last``
    at the last step: ``v`` against ``v_d`` (both gain the same color).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

from .coloring import ColorSet, TotalColoring, find_equalizing_color, find_extension_color, verify_r_vsdtc
from .construct import forest_vsdtc
from .errors import ExtensionFailure, InvalidInput, NoSafeColor
from .graph import Graph, components, degeneracy, induced_subgraph, require_no_isolated_edge
from .solver import SearchBudget, exists_coloring

log = logging.getLogger(__name__)

BASE_SIZE = 4


def _bits(mask: int) -> list[int]:
    out = []
    c = 0
    while mask:
        if mask & 1:
            out.append(c)
        mask >>= 1
        c += 1
    return out


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass
class ExtensionState:
    """Everything needed to re-insert one vertex.

    ``f`` is the shared partial coloring of the whole graph and ``alive``
    marks the vertices of the current graph (``v`` included). Neighbors
    ``nbrs[i-1]`` is ``v_i``, ``edges[i-1]`` is ``e_i`` and ``second[i-1]``
    lists the live neighbors of ``v_i`` other than ``v``.
    """

    G: Graph
    f: TotalColoring
    alive: list[bool]
    v: int
    nbrs: tuple[int, ...]
    edges: tuple[int, ...]
    second: tuple[tuple[int, ...], ...]
    lam: int
    k: int

    @classmethod
    def at(cls, G: Graph, f: TotalColoring, alive: list[bool], v: int, lam: int, k: int) -> "ExtensionState":
        alive[v] = True
        nbrs = tuple(w for w in G.neighbors[v] if alive[w] and w != v)
        edges = tuple(G.edge_index(v, w) for w in nbrs)
        second = tuple(tuple(x for x in G.neighbors[w] if alive[x] and x != v) for w in nbrs)
        return cls(G, f, alive, v, nbrs, edges, second, lam, k)

    @property
    def delta(self) -> int:
        return len(self.nbrs)

    @property
    def c0(self) -> Optional[int]:
        return self.f.vertex_colors[self.v]

    @property
    def palette_mask(self) -> int:
        return (1 << (self.lam + 1)) - 2

    def set_mask(self, z: int) -> int:
        """Colors currently present on ``N<z>`` within the live graph."""
        vc, ec = self.f.vertex_colors, self.f.edge_colors
        m = 0
        if vc[z] is not None:
            m |= 1 << vc[z]
        for w, e in zip(self.G.neighbors[z], self.G.incident[z]):
            if self.alive[w]:
                if vc[w] is not None:
                    m |= 1 << vc[w]
                if ec[e] is not None:
                    m |= 1 << ec[e]
        return m

    def describe(self) -> dict:
        return {
            "v": self.v,
            "neighbors": list(self.nbrs),
            "second": [list(s) for s in self.second],
            "c0": self.c0,
            "edge_colors": [self.f.edge_colors[e] for e in self.edges],
            "lambda": self.lam,
        }


@dataclass
class ForbiddenSet:
    case: str
    stage: int
    bound: int
    parts: dict[str, int] = field(default_factory=dict)

    @property
    def union(self) -> int:
        m = 0
        for x in self.parts.values():
            m |= x
        return m

    def __len__(self) -> int:
        return _popcount(self.union)

    def __contains__(self, c: int) -> bool:
        return bool(self.union >> c & 1)

    def colors(self, label: Optional[str] = None) -> list[int]:
        return _bits(self.parts.get(label, 0) if label else self.union)


def stage_case(delta: int) -> str:
    return "C" if delta == 1 else "B" if delta == 2 else "A"


def stage_bound(delta: int, stage: int, max_degree: int) -> int:
    """Ceiling on the number of forbidden colors at ``stage`` (1-based)."""
    D = max_degree
    if delta == 1:
        return 2 * D + 1
    if delta == 2:
        return 2 * D + 1 if stage == 1 else 2 * D + 2
    if stage == delta:
        return 2 * D + 3 * delta - 4
    if stage == delta - 1:
        return 2 * D + 2 * delta - 2
    return 2 * D + stage - 1


def _completing(S: int, W: int, full: int) -> int:
    """Colors ``c`` in the palette with ``S | {c} == W``."""
    if S == W:
        return S & full
    c = find_extension_color(ColorSet(W), ColorSet(S), full.bit_length() - 1)
    if c is None or W != S | 1 << c:
        return 0
    return 1 << c & full


def _equalizing(A: int, B: int, full: int) -> int:
    """Colors ``c`` in the palette with ``A | {c} == B | {c}``."""
    if A == B:
        return full
    c = find_equalizing_color(ColorSet(A), ColorSet(B), full.bit_length() - 1)
    return 1 << c & full if c is not None else 0


def vertex_forbidden(state: ExtensionState) -> ForbiddenSet:
    """Colors ruled out for ``v`` itself.

    ``neighbor-colors``: the colors of ``v_1..v_d``. ``extension``: for a
    neighbor ``w`` of ``v_i`` not adjacent to ``v``, the color ``c`` with
    ``C<w> == C<v_i> | {c}``. ``equalizing``: when ``v_i`` and ``v_j`` are
    adjacent both sets gain ``c0``, so the color making them equal is out.
    """
    G, f = state.G, state.f
    full = state.palette_mask
    vc = f.vertex_colors
    nbr_pos = {w: i for i, w in enumerate(state.nbrs)}
    own = 0
    ext = 0
    eq = 0
    for i, vi in enumerate(state.nbrs):
        own |= 1 << vc[vi]
        Si = state.set_mask(vi)
        for w in state.second[i]:
            W = state.set_mask(w)
            if w in nbr_pos:
                if nbr_pos[w] > i:
                    eq |= _equalizing(W, Si, full)
            else:
                ext |= _completing(Si, W, full)
    D = G.max_degree
    return ForbiddenSet(
        "vertex", 0, state.delta * D, {"neighbor-colors": own & full, "extension": ext, "equalizing": eq}
    )


def choose_safe_vertex_color(state: ExtensionState) -> int:
    """Smallest color for ``v`` that keeps every ``v_i`` separable from its other neighbors."""
    fs = vertex_forbidden(state)
    free = state.palette_mask & ~fs.union
    if not free:
        raise NoSafeColor(f"no safe color for vertex {state.v}: {state.describe()}")
    return (free & -free).bit_length() - 1


def forbidden_colors_for_edge(state: ExtensionState, stage: int) -> ForbiddenSet:
    """Forbidden colors for ``e_stage`` given that ``e_1..e_{stage-1}`` are colored."""
    d = state.delta
    if not 1 <= stage <= d:
        raise InvalidInput(f"stage {stage} out of range 1..{d}")
    if state.c0 is None:
        raise InvalidInput("vertex color must be chosen before its edges")
    G, f = state.G, state.f
    vc, ec = f.vertex_colors, f.edge_colors
    full = state.palette_mask
    i = stage - 1
    vi = state.nbrs[i]
    v = state.v

    proper = 1 << state.c0 | 1 << vc[vi]
    for l in range(i):
        proper |= 1 << ec[state.edges[l]]
    for w in state.second[i]:
        proper |= 1 << ec[G.edge_index(vi, w)]

    Si = state.set_mask(vi)
    neighbor = 0
    for w in state.second[i]:
        # finished w: v_i must not copy it; unfinished v_l (l > i): v_i must not copy
        # its current set, or the later step would have too many forbidden colors
        neighbor |= _completing(Si, state.set_mask(w), full)

    fs = ForbiddenSet(stage_case(d), stage, stage_bound(d, stage, G.max_degree))
    fs.parts["proper"] = proper & full
    fs.parts["neighbor"] = neighbor

    A = state.set_mask(v)
    if stage == d - 1:
        B = state.set_mask(state.nbrs[d - 1])
        guard = 0
        if A == B:
            guard = A & full
        else:
            for c in _bits(full):
                if _popcount((A | 1 << c) ^ B) < 2:
                    guard |= 1 << c
        fs.parts["last-pair"] = guard
    if stage == d:
        earlier = 0
        for l in range(d - 1):
            earlier |= _completing(A, state.set_mask(state.nbrs[l]), full)
        fs.parts["v-earlier"] = earlier
        fs.parts["v-last"] = _equalizing(A, Si, full)
    return fs


@dataclass
class StageRecord:
    vertex: int
    delta: int
    stage: int
    case: str
    forbidden: int
    bound: int


@dataclass
class ExtensionTrace:
    """What happened during one run; ``backtracks`` should stay empty."""

    lam: int = 0
    base: list[int] = field(default_factory=list)
    order: list[int] = field(default_factory=list)
    vertex_steps: list[StageRecord] = field(default_factory=list)
    edge_steps: list[StageRecord] = field(default_factory=list)
    backtracks: list[dict] = field(default_factory=list)
    delegated: Optional[str] = None

    def over_bound(self) -> list[StageRecord]:
        return [s for s in self.vertex_steps + self.edge_steps if s.forbidden > s.bound]


def _creates_isolated_edge(G: Graph, alive: list[bool], deg: list[int], u: int) -> bool:
    for w in G.neighbors[u]:
        if not alive[w] or deg[w] != 2:
            continue
        x = next(x for x in G.neighbors[w] if alive[x] and x != u)
        dx = deg[x] - (1 if G.has_edge(x, u) else 0)
        if dx == 1:
            return True
    return False


def _component_sizes(G: Graph, alive: list[bool]) -> list[int]:
    size_of = [0] * G.n
    seen = [False] * G.n
    for s in range(G.n):
        if not alive[s] or seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for y in G.neighbors[x]:
                if alive[y] and not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    stack.append(y)
        for x in comp:
            size_of[x] = len(comp)
    return size_of


def peel(G: Graph, k: int) -> tuple[list[int], list[int]]:
    """Removal sequence and leftover base.

    Repeatedly removes, from components with more than ``BASE_SIZE``
    vertices, the vertex of smallest degree (then index) with degree at
    most ``k`` whose removal does not leave a K_2 component. Stops when all
    components are small; those vertices form the base.
    """
    alive = [True] * G.n
    deg = [G.degree(u) for u in range(G.n)]
    removal = []
    while True:
        size = _component_sizes(G, alive)
        best = None
        for u in range(G.n):
            if alive[u] and size[u] > BASE_SIZE and deg[u] <= k:
                if best is not None and deg[u] >= deg[best]:
                    continue
                if not _creates_isolated_edge(G, alive, deg, u):
                    best = u
        if best is None:
            break
        alive[best] = False
        removal.append(best)
        for w in G.neighbors[best]:
            if alive[w]:
                deg[w] -= 1
    return removal, [u for u in range(G.n) if alive[u]]


def _proper_mask(state: ExtensionState, i: int) -> int:
    G, f = state.G, state.f
    vi = state.nbrs[i]
    m = 1 << state.c0 | 1 << f.vertex_colors[vi]
    for l in range(i):
        m |= 1 << f.edge_colors[state.edges[l]]
    for w in state.second[i]:
        m |= 1 << f.edge_colors[G.edge_index(vi, w)]
    return m


def _local_backtrack(state: ExtensionState) -> bool:
    """Exhaustive search over ``c0`` and the pendant edge colors of ``v``.

    Only exact constraints are used (no look-ahead guards). Leaves ``f``
    colored on success and restores it on failure.
    """
    f, d, full = state.f, state.delta, state.palette_mask
    vc, ec = f.vertex_colors, f.edge_colors
    nbr_pos = {w: j for j, w in enumerate(state.nbrs)}

    def stage_ok(i: int) -> bool:
        vi = state.nbrs[i]
        Ci = state.set_mask(vi)
        for w in state.second[i]:
            j = nbr_pos.get(w)
            if (j is None or j < i) and state.set_mask(w) == Ci:
                return False
        if i == d - 1:
            A = state.set_mask(state.v)
            return all(A != state.set_mask(x) for x in state.nbrs)
        return True

    def rec(i: int) -> bool:
        if i == d:
            return True
        for c in _bits(full & ~_proper_mask(state, i)):
            ec[state.edges[i]] = c
            if stage_ok(i) and rec(i + 1):
                return True
        ec[state.edges[i]] = None
        return False

    own = 0
    for w in state.nbrs:
        own |= 1 << vc[w]
    for c0 in _bits(full & ~own):
        vc[state.v] = c0
        if rec(0):
            return True
    vc[state.v] = None
    for e in state.edges:
        ec[e] = None
    return False


def _insert(state: ExtensionState, trace: ExtensionTrace) -> None:
    f = state.f
    D = state.G.max_degree
    vf = vertex_forbidden(state)
    trace.vertex_steps.append(StageRecord(state.v, state.delta, 0, "vertex", len(vf), vf.bound))
    c0 = choose_safe_vertex_color(state)
    f.vertex_colors[state.v] = c0
    for stage in range(1, state.delta + 1):
        fs = forbidden_colors_for_edge(state, stage)
        trace.edge_steps.append(StageRecord(state.v, state.delta, stage, fs.case, len(fs), fs.bound))
        free = state.palette_mask & ~fs.union
        if not free:
            dump = state.describe()
            dump.update(stage=stage, forbidden={k: _bits(m) for k, m in fs.parts.items()}, max_degree=D)
            log.warning("greedy extension stuck, falling back to local search: %s", dump)
            for e in state.edges:
                f.edge_colors[e] = None
            ok = _local_backtrack(state)
            dump["recovered"] = ok
            trace.backtracks.append(dump)
            if not ok:
                raise ExtensionFailure(f"local search failed re-inserting vertex {state.v}: {dump}")
            return
        f.edge_colors[state.edges[stage - 1]] = (free & -free).bit_length() - 1


def extend_degenerate_vsdtc(
    G: Graph,
    k: int,
    trace: Optional[ExtensionTrace] = None,
    budget: Optional[SearchBudget] = None,
) -> TotalColoring:
    """Adjacent-distinguishing total coloring of a k-degenerate graph with palette ``k*Delta+3``.

    ``k == 1`` goes to :func:`forest_vsdtc`. Graphs with max degree at most 2
    are colored by the exact solver inside the same palette. Pass an
    :class:`ExtensionTrace` to collect per-step forbidden-set sizes.
    """
    require_no_isolated_edge(G)
    if not isinstance(k, int) or k < 1:
        raise InvalidInput(f"k must be a positive integer, got {k!r}")
    if degeneracy(G).k > k:
        raise InvalidInput(f"graph is not {k}-degenerate")
    trace = trace if trace is not None else ExtensionTrace()
    D = G.max_degree
    if k == 1:
        trace.delegated = "forest"
        f = forest_vsdtc(G)
        trace.lam = f.palette_size
        return f
    lam = k * D + 3
    trace.lam = lam
    budget = budget or SearchBudget()
    if D <= 2:
        trace.delegated = "exact"
        f = exists_coloring(G, 1, lam, budget)
        if f is None:
            raise ExtensionFailure(f"no {lam}-coloring found for a max-degree-{D} graph")
        return f

    removal, base = peel(G, k)
    trace.order, trace.base = removal, base
    f = TotalColoring.empty(G, lam)
    alive = [False] * G.n
    B, bmap = induced_subgraph(G, base)
    for H, hmap in components(B):
        w = exists_coloring(H, 1, lam, budget)
        if w is None:
            raise ExtensionFailure(f"base component of order {H.n} has no {lam}-coloring")
        for i, u in enumerate(hmap):
            f.vertex_colors[bmap[u]] = w.vertex_colors[i]
            alive[bmap[u]] = True
        for j, (a, b) in enumerate(H.edges):
            f.edge_colors[G.edge_index(bmap[hmap[a]], bmap[hmap[b]])] = w.edge_colors[j]

    for v in reversed(removal):
        _insert(ExtensionState.at(G, f, alive, v, lam, k), trace)

    report = verify_r_vsdtc(G, f, 1)
    if not report.valid:
        raise ExtensionFailure(f"extension produced an invalid coloring: {report.violations[:3]}")
    return f
