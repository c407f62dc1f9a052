"""Simple undirected graphs, distances, degeneracy and test-family generators."""

from __future__ import annotations

import heapq
import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import InvalidInput, IsolatedEdge

VERTEX = "v"
EDGE = "e"


class Element(NamedTuple):
    """A vertex or an edge, addressed by index."""

    tag: str
    index: int

    @classmethod
    def vertex(cls, i: int) -> "Element":
        return cls(VERTEX, i)

    @classmethod
    def edge(cls, i: int) -> "Element":
        return cls(EDGE, i)

    def __repr__(self):
        return f"{self.tag}{self.index}"


class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    Edges are stored as ``(u, v)`` with ``u < v`` and keep the index of
    their first occurrence in the input list.
    """

    __slots__ = ("n", "edges", "neighbors", "incident", "_edge_index")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if not isinstance(n, int) or n < 0:
            raise InvalidInput(f"vertex count must be a non-negative integer, got {n!r}")
        self.n = n
        index: dict[tuple[int, int], int] = {}
        edge_list: list[tuple[int, int]] = []
        for pair in edges:
            try:
                u, v = (int(x) for x in pair)
            except (TypeError, ValueError):
                raise InvalidInput(f"malformed edge {pair!r}") from None
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInput(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InvalidInput(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key not in index:
                index[key] = len(edge_list)
                edge_list.append(key)
        nbrs: list[list[int]] = [[] for _ in range(n)]
        inc: list[list[int]] = [[] for _ in range(n)]
        for i, (u, v) in enumerate(edge_list):
            nbrs[u].append(v)
            nbrs[v].append(u)
            inc[u].append(i)
            inc[v].append(i)
        for u in range(n):
            order = sorted(range(len(nbrs[u])), key=nbrs[u].__getitem__)
            nbrs[u] = [nbrs[u][j] for j in order]
            inc[u] = [inc[u][j] for j in order]
        self.edges: tuple[tuple[int, int], ...] = tuple(edge_list)
        self.neighbors: tuple[tuple[int, ...], ...] = tuple(tuple(x) for x in nbrs)
        self.incident: tuple[tuple[int, ...], ...] = tuple(tuple(x) for x in inc)
        self._edge_index = index

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, u: int) -> int:
        return len(self.neighbors[u])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.neighbors), default=0)

    @property
    def min_degree(self) -> int:
        return min((len(a) for a in self.neighbors), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._edge_index

    def edge_index(self, u: int, v: int) -> int:
        try:
            return self._edge_index[(u, v) if u < v else (v, u)]
        except KeyError:
            raise InvalidInput(f"no edge between {u} and {v}") from None

    def other_end(self, e: int, u: int) -> int:
        a, b = self.edges[e]
        return b if a == u else a

    def elements(self) -> list[Element]:
        return [Element.vertex(u) for u in range(self.n)] + [Element.edge(i) for i in range(self.m)]

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class PeelingOrder:
    order: tuple[int, ...]
    k: int


def build_graph(n: int, edge_list: Iterable[Sequence[int]] = ()) -> Graph:
    return Graph(n, edge_list)


def bfs_distances(G: Graph, u: int, radius: int | None = None) -> dict[int, int]:
    """Distances from ``u`` to every reachable vertex, optionally capped at ``radius``."""
    if not 0 <= u < G.n:
        raise InvalidInput(f"vertex {u} out of range")
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        d = dist[x]
        if radius is not None and d >= radius:
            continue
        for y in G.neighbors[x]:
            if y not in dist:
                dist[y] = d + 1
                queue.append(y)
    return dist


def distance_within(G: Graph, u: int, r: int) -> dict[int, int]:
    """Vertices at distance at most ``r`` from ``u`` mapped to their distance."""
    if r < 1:
        raise InvalidInput(f"radius must be >= 1, got {r}")
    return bfs_distances(G, u, r)


def diameter(G: Graph) -> int:
    """Largest finite distance (0 for graphs without edges)."""
    return max((max(bfs_distances(G, u).values()) for u in range(G.n)), default=0)


def degeneracy(G: Graph) -> PeelingOrder:
    """Repeated minimum-degree removal; ties go to the smallest vertex index."""
    deg = [G.degree(u) for u in range(G.n)]
    heap = [(deg[u], u) for u in range(G.n)]
    heapq.heapify(heap)
    removed = [False] * G.n
    order = []
    k = 0
    while heap:
        d, u = heapq.heappop(heap)
        if removed[u] or d != deg[u]:
            continue
        removed[u] = True
        order.append(u)
        k = max(k, d)
        for w in G.neighbors[u]:
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return PeelingOrder(tuple(order), k)


def is_peeling_witness(G: Graph, order: Sequence[int], k: int) -> bool:
    """Replay ``order`` and confirm no removed vertex has more than ``k`` live neighbors."""
    if sorted(order) != list(range(G.n)):
        return False
    alive = [True] * G.n
    for u in order:
        if sum(alive[w] for w in G.neighbors[u]) > k:
            return False
        alive[u] = False
    return True


def component_labels(G: Graph) -> list[int]:
    label = [-1] * G.n
    c = 0
    for s in range(G.n):
        if label[s] >= 0:
            continue
        label[s] = c
        stack = [s]
        while stack:
            x = stack.pop()
            for y in G.neighbors[x]:
                if label[y] < 0:
                    label[y] = c
                    stack.append(y)
        c += 1
    return label


def induced_subgraph(G: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph on ``vertices`` (relabelled in ascending order) and the map back to ``G``."""
    keep = sorted(set(vertices))
    pos = {u: i for i, u in enumerate(keep)}
    edges = [(pos[a], pos[b]) for a, b in G.edges if a in pos and b in pos]
    return Graph(len(keep), edges), keep


def components(G: Graph) -> list[tuple[Graph, list[int]]]:
    """Connected components, ordered by smallest member."""
    label = component_labels(G)
    groups: dict[int, list[int]] = {}
    for u, c in enumerate(label):
        groups.setdefault(c, []).append(u)
    return [induced_subgraph(G, groups[c]) for c in sorted(groups)]


def is_connected(G: Graph) -> bool:
    return G.n <= 1 or max(component_labels(G)) == 0


def has_isolated_edge(G: Graph) -> bool:
    return any(
        G.degree(a) == 1 and G.degree(b) == 1 for a, b in G.edges
    )


def require_no_isolated_edge(G: Graph) -> None:
    for a, b in G.edges:
        if G.degree(a) == 1 and G.degree(b) == 1:
            raise IsolatedEdge(f"edge ({a}, {b}) is a K_2 component")


def is_forest(G: Graph) -> bool:
    return G.m == G.n - (max(component_labels(G)) + 1 if G.n else 0)


def is_tree(G: Graph) -> bool:
    return G.n >= 1 and G.m == G.n - 1 and is_connected(G)


def incidence_set(G: Graph, u: int) -> set[Element]:
    """``u`` together with its neighbors and its incident edges."""
    if not 0 <= u < G.n:
        raise InvalidInput(f"vertex {u} out of range")
    out = {Element.vertex(u)}
    out.update(Element.vertex(w) for w in G.neighbors[u])
    out.update(Element.edge(e) for e in G.incident[u])
    return out


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for H in graphs:
        edges.extend((a + offset, b + offset) for a, b in H.edges)
        offset += H.n
    return Graph(offset, edges)


# ---------------------------------------------------------------- generators

FAMILIES = (
    "path",
    "cycle",
    "complete",
    "complete_bipartite",
    "random_tree",
    "random_k_degenerate",
    "random_connected",
)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidInput("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def random_tree(n: int, rng: random.Random) -> Graph:
    """Uniform labelled tree via a random Pruefer sequence."""
    if n <= 2:
        return path_graph(n)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [u for u in range(n) if degree[u] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return Graph(n, edges)


def random_k_degenerate(n: int, k: int, rng: random.Random) -> Graph:
    """Each new vertex attaches to ``min(k, i)`` distinct earlier vertices."""
    edges = []
    for i in range(1, n):
        for j in rng.sample(range(i), min(k, i)):
            edges.append((j, i))
    return Graph(n, edges)


def random_connected(n: int, p: float, rng: random.Random) -> Graph:
    """Random spanning tree plus each remaining pair independently with probability ``p``."""
    T = random_tree(n, rng)
    edges = list(T.edges)
    for i in range(n):
        for j in range(i + 1, n):
            if not T.has_edge(i, j) and rng.random() < p:
                edges.append((i, j))
    return Graph(n, edges)


def generate(kind: str, *params, seed: int = 0) -> Graph:
    """Deterministic instance of a named family.

    ``params`` per family: path/cycle/complete/random_tree take ``n``;
    complete_bipartite takes ``a, b``; random_k_degenerate takes ``n, k``;
    random_connected takes ``n, p``.
    """
    rng = random.Random(seed)
    try:
        if kind == "path":
            (n,) = params
            return path_graph(_count(n))
        if kind == "cycle":
            (n,) = params
            return cycle_graph(_count(n))
        if kind == "complete":
            (n,) = params
            return complete_graph(_count(n))
        if kind == "complete_bipartite":
            a, b = params
            return complete_bipartite_graph(_count(a), _count(b))
        if kind == "random_tree":
            (n,) = params
            return random_tree(_count(n, 1), rng)
        if kind == "random_k_degenerate":
            n, k = params
            return random_k_degenerate(_count(n, 1), _count(k, 1), rng)
        if kind == "random_connected":
            n, p = params
            p = float(p)
            if not 0.0 <= p <= 1.0:
                raise InvalidInput(f"probability out of range: {p}")
            return random_connected(_count(n, 1), p, rng)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InvalidInput):
            raise
        raise InvalidInput(f"bad parameters for {kind}: {params!r}") from None
    raise InvalidInput(f"unknown graph family {kind!r}")


def _count(x, lo: int = 0) -> int:
    if isinstance(x, float) and not x.is_integer():
        raise InvalidInput(f"expected an integer, got {x!r}")
    x = int(x)
    if x < lo:
        raise InvalidInput(f"expected an integer >= {lo}, got {x}")
    return x
