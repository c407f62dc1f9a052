"""Reference implementations used only by the tests.

They share no code with the package beyond the Graph container: distances
come from Floyd-Warshall, colorings from exhaustive enumeration.
"""

from __future__ import annotations

import itertools

import numpy as np

from vsdtc.graph import Graph

INF = float("inf")


def all_pairs_distances(G: Graph) -> list[list[float]]:
    n = G.n
    d = [[0 if i == j else INF for j in range(n)] for i in range(n)]
    for u, v in G.edges:
        d[u][v] = d[v][u] = 1
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return d


def close_pairs(G: Graph, r: int) -> list[tuple[int, int]]:
    d = all_pairs_distances(G)
    return [(u, w) for u in range(G.n) for w in range(u + 1, G.n) if d[u][w] <= r]


def conflict_pairs(G: Graph) -> list[tuple[int, int]]:
    """Element pairs (vertices 0..n-1, edges n..) that must get different colors."""
    n = G.n
    out = list(G.edges)
    for i, (a, b) in enumerate(G.edges):
        out.append((a, n + i))
        out.append((b, n + i))
        for j in range(i + 1, G.m):
            if {a, b} & set(G.edges[j]):
                out.append((n + i, n + j))
    return out


def incidence_positions(G: Graph, u: int) -> list[int]:
    pos = [u]
    for i, (a, b) in enumerate(G.edges):
        if u in (a, b):
            pos.append(a if b == u else b)
            pos.append(G.n + i)
    return pos


def brute_force_exists(G: Graph, kappa: int, radii=(1,)) -> dict[int, bool]:
    """For each r in ``radii``: does some total coloring from 1..kappa distinguish pairs within r?

    Enumerates all kappa**(n+m) assignments at once with numpy.
    """
    N = G.n + G.m
    if N == 0:
        return {r: True for r in radii}
    grid = np.indices((kappa,) * N, dtype=np.int8).reshape(N, -1) + 1
    ok = np.ones(grid.shape[1], dtype=bool)
    for x, y in conflict_pairs(G):
        ok &= grid[x] != grid[y]
    grid = grid[:, ok]
    bits = (np.int64(1) << grid.astype(np.int64))
    masks = []
    for u in range(G.n):
        m = np.zeros(grid.shape[1], dtype=np.int64)
        for p in incidence_positions(G, u):
            m |= bits[p]
        masks.append(m)
    out = {}
    for r in radii:
        good = np.ones(grid.shape[1], dtype=bool)
        for u, w in close_pairs(G, r):
            good &= masks[u] != masks[w]
        out[r] = bool(good.any())
    return out


def brute_force_value(G: Graph, r: int, upto: int = 8):
    for kappa in range(1, upto + 1):
        if brute_force_exists(G, kappa, (r,))[r]:
            return kappa
    return None


def all_subsets(kappa: int):
    colors = range(1, kappa + 1)
    for size in range(kappa + 1):
        for combo in itertools.combinations(colors, size):
            yield frozenset(combo)


def extension_colors(A: frozenset, B: frozenset, kappa: int) -> list[int]:
    return [c for c in range(1, kappa + 1) if A == B | {c} or B == A | {c}]


def equalizing_colors(A: frozenset, B: frozenset, kappa: int) -> list[int]:
    return [c for c in range(1, kappa + 1) if A | {c} == B | {c}]


def labeled_graphs(n: int, max_edges: int):
    pairs = list(itertools.combinations(range(n), 2))
    for m in range(min(max_edges, len(pairs)) + 1):
        for edges in itertools.combinations(pairs, m):
            yield Graph(n, edges)


def residual_degrees_ok(G: Graph, order, k: int) -> bool:
    """Each vertex has at most k neighbors later in ``order``."""
    pos = {u: i for i, u in enumerate(order)}
    return sorted(order) == list(range(G.n)) and all(
        sum(1 for w in G.neighbors[u] if pos[w] > pos[u]) <= k for u in range(G.n)
    )


def min_degeneracy(G: Graph) -> int:
    """Max over all induced subgraphs of the min degree (exhaustive; small n only)."""
    best = 0
    for size in range(1, G.n + 1):
        for S in itertools.combinations(range(G.n), size):
            s = set(S)
            best = max(best, min(sum(1 for w in G.neighbors[u] if w in s) for u in S))
    return best
