"""Constructive colorings: disjoint-palette composition and tree specializations.

A composed coloring puts a strong edge coloring on the edges (colors
``1..p``) and a proper vertex coloring on the vertices (colors
``p+1..p+q``). Because the two ranges are disjoint, two vertices have equal
total color sets only if their edge color sets are equal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .coloring import TotalColoring, verify_r_vsdtc
from .errors import InvalidInput, NotAForest, NotATree, VSDTCError
from .graph import (
    Graph,
    bfs_distances,
    component_labels,
    degeneracy,
    is_forest,
    is_tree,
    require_no_isolated_edge,
)


def greedy_vertex_coloring(G: Graph) -> tuple[list[int], int]:
    """Smallest-feasible-color greedy in reverse peeling order; uses at most degeneracy+1 colors."""
    colors = [0] * G.n
    for u in reversed(degeneracy(G).order):
        used = {colors[w] for w in G.neighbors[u]}
        c = 1
        while c in used:
            c += 1
        colors[u] = c
    return colors, max(colors, default=0)


def _bipartition(G: Graph) -> list[int]:
    side = [0] * G.n
    seen = [False] * G.n
    for s in range(G.n):
        if seen[s]:
            continue
        seen[s] = True
        stack = [s]
        while stack:
            x = stack.pop()
            for y in G.neighbors[x]:
                if not seen[y]:
                    seen[y] = True
                    side[y] = 1 - side[x]
                    stack.append(y)
    return [s + 1 for s in side]


def _edge_order(G: Graph) -> list[int]:
    vorder = list(reversed(degeneracy(G).order))
    vpos = {u: i for i, u in enumerate(vorder)}
    return sorted(
        range(G.m),
        key=lambda e: (max(vpos[x] for x in G.edges[e]), min(vpos[x] for x in G.edges[e])),
    )


def greedy_r_sec(G: Graph, r: int) -> tuple[list[int], int]:
    """Greedy proper edge coloring whose edge color sets differ within distance ``r``.

    Edges are colored in a vertex-completing order with the smallest color
    that keeps properness and keeps every completed vertex's edge color set
    distinct from the completed sets around it. When no color in the current
    palette fits, the palette grows by one. If even a fresh color fails (both
    endpoints complete at once with identical sets), the edge takes a fresh
    color and another edge at one endpoint is moved to a second fresh color,
    which separates every affected set.
    """
    if r < 1:
        raise InvalidInput("r must be >= 1")
    require_no_isolated_edge(G)
    near = [set(bfs_distances(G, u, r)) - {u} for u in range(G.n)]
    colors = [0] * G.m
    remaining = [G.degree(u) for u in range(G.n)]
    done_mask: list[Optional[int]] = [None] * G.n
    p = G.max_degree

    def used_at(u):
        m = 0
        for e in G.incident[u]:
            m |= 1 << colors[e]
        return m

    def clashes(u, m, extra):
        for w in near[u]:
            mw = extra.get(w, done_mask[w])
            if mw is not None and mw == m:
                return True
        return False

    for e in _edge_order(G):
        a, b = G.edges[e]
        ua, ub = used_at(a), used_at(b)
        last_a, last_b = remaining[a] == 1, remaining[b] == 1
        chosen = None
        for c in range(1, p + 2):
            if (ua | ub) >> c & 1:
                continue
            extra = {}
            if last_a:
                extra[a] = (ua | 1 << c) & ~1
            if last_b:
                extra[b] = (ub | 1 << c) & ~1
            if any(clashes(u, extra[u], extra) for u in extra):
                continue
            chosen = c
            break
        remaining[a] -= 1
        remaining[b] -= 1
        if chosen is not None:
            colors[e] = chosen
            p = max(p, chosen)
        else:
            # both endpoints complete with equal sets even under a fresh color
            colors[e] = p + 1
            hub = a if G.degree(a) > 1 else b
            other = next(f for f in G.incident[hub] if f != e)
            colors[other] = p + 2
            p += 2
            for x in G.edges[other]:
                if done_mask[x] is not None:
                    done_mask[x] = used_at(x) & ~1
        for u in (a, b):
            if remaining[u] == 0:
                done_mask[u] = used_at(u) & ~1
    return colors, max(colors, default=0)


@dataclass
class Composition:
    coloring: TotalColoring
    p: int  # edge palette 1..p
    q: int  # vertex palette p+1..p+q


def compose(G: Graph, r: int, edge_colors: Sequence[int], vertex_colors: Sequence[int]) -> Composition:
    """Edges keep ``edge_colors``; vertex colors are shifted above the edge palette."""
    p = max(edge_colors, default=0)
    q = max(vertex_colors, default=0)
    f = TotalColoring(p + q, [p + c for c in vertex_colors], list(edge_colors))
    report = verify_r_vsdtc(G, f, r)
    if not report.valid:
        raise VSDTCError(f"composed coloring failed verification: {report.violations[:3]}")
    return Composition(f, p, q)


def compose_parts(G: Graph, r: int) -> Composition:
    require_no_isolated_edge(G)
    edge_colors, _ = greedy_r_sec(G, r)
    vertex_colors, _ = greedy_vertex_coloring(G)
    return compose(G, r, edge_colors, vertex_colors)


def compose_vsdtc(G: Graph, r: int) -> TotalColoring:
    """Composed coloring from the greedy strong edge coloring and greedy vertex coloring."""
    return compose_parts(G, r).coloring


# ---------------------------------------------------------------- trees


def tree_r_sec(G: Graph, r: int, palette: Optional[int] = None) -> tuple[list[int], int]:
    """Top-down strong edge coloring of a forest.

    Each tree is rooted at its smallest max-degree vertex and processed in
    BFS order. At vertex ``x`` the colors of all child edges are chosen at
    once, which fixes the edge color set of ``x`` and of its leaf children;
    the first color combination (lexicographic) that keeps these sets
    distinct from every already-fixed set within distance ``r`` wins. The
    palette starts at ``palette`` (default Delta+1) and grows only when no
    combination fits.
    """
    if not is_forest(G):
        raise NotAForest("graph has a cycle")
    require_no_isolated_edge(G)
    delta = G.max_degree
    P = max(palette if palette is not None else delta + 1, delta)
    colors = [0] * G.m
    fixed: list[Optional[frozenset]] = [None] * G.n
    label = component_labels(G)
    roots = {}
    for u in range(G.n):
        c = label[u]
        if c not in roots or G.degree(u) > G.degree(roots[c]):
            roots[c] = u
    for root in (roots[c] for c in sorted(roots)):
        parent_edge = {root: None}
        queue = [root]
        head = 0
        while head < len(queue):
            x = queue[head]
            head += 1
            pe = parent_edge[x]
            children = [(w, e) for w, e in zip(G.neighbors[x], G.incident[x]) if e != pe]
            for w, e in children:
                parent_edge[w] = e
                queue.append(w)
            if not children and pe is not None:
                continue  # leaf: fixed by its parent
            P = _color_children(G, r, x, pe, children, colors, fixed, P)
    return colors, max(colors, default=0)


def _color_children(G, r, x, pe, children, colors, fixed, P):
    near_x = bfs_distances(G, x, r)
    pc = colors[pe] if pe is not None else 0
    leaves = [(w, e) for w, e in children if G.degree(w) == 1]
    inner = [(w, e) for w, e in children if G.degree(w) > 1]
    # leaf children share one distance profile: everything fixed within r-1 of x
    banned_single = set()
    for z, d in near_x.items():
        if d <= r - 1 and fixed[z] is not None and len(fixed[z]) == 1:
            banned_single |= fixed[z]
    while True:
        pool = [c for c in range(1, P + 1) if c != pc]
        for combo in itertools.combinations(pool, len(children)):
            cx = frozenset(combo) | ({pc} if pc else frozenset())
            if any(z != x and fixed[z] == cx for z in near_x):
                continue
            leaf_ok = [c for c in combo if c not in banned_single]
            if len(leaf_ok) < len(leaves):
                continue
            leaf_cols = leaf_ok[: len(leaves)]
            rest = [c for c in combo if c not in leaf_cols]
            for (w, e), c in zip(leaves, leaf_cols):
                colors[e] = c
                fixed[w] = frozenset((c,))
            for (w, e), c in zip(inner, rest):
                colors[e] = c
            fixed[x] = cx
            return P
        P += 1


def forest_vsdtc(G: Graph) -> TotalColoring:
    """Adjacent-distinguishing total coloring of a forest with at most Delta+3 colors."""
    if not is_forest(G):
        raise NotAForest("graph has a cycle")
    require_no_isolated_edge(G)
    edge_colors, _ = tree_r_sec(G, 1)
    return compose(G, 1, edge_colors, _bipartition(G)).coloring


TREE_TARGETS = {2: lambda delta: delta + 3, 3: lambda delta: 2 * delta + 1}


def tree_target(T: Graph, r: int) -> int:
    """Color-count target for ``tree_vsdtc_r``."""
    return TREE_TARGETS[r](T.max_degree)


def tree_vsdtc_r(T: Graph, r: int) -> TotalColoring:
    """Distance-``r`` distinguishing total coloring of a tree, ``r`` in {2, 3}.

    Aims for Delta+3 colors at ``r=2`` and 2*Delta+1 at ``r=3``; the edge
    part may need more, which shows up in ``palette_size``.
    """
    if r not in TREE_TARGETS:
        raise InvalidInput(f"tree construction supports r in {{2, 3}}, got {r}")
    if not is_tree(T):
        raise NotATree("graph is not a tree")
    delta = T.max_degree
    if delta < r:
        raise InvalidInput(f"r={r} needs max degree >= {r}, got {delta}")
    start = delta + 1 if r == 2 else 2 * delta - 1
    edge_colors, _ = tree_r_sec(T, r, start)
    return compose(T, r, edge_colors, _bipartition(T)).coloring
