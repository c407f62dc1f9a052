"""Known lower and upper bounds on the distinguishing total chromatic number."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .coloring import lower_bound
from .graph import Graph, components, degeneracy, is_forest, is_tree


@dataclass
class Bounds:
    n: int
    m: int
    r: int
    max_degree: int
    degeneracy: int
    lower: int
    upper: dict[str, int] = field(default_factory=dict)
    conjectured: dict[str, Optional[int]] = field(default_factory=dict)

    @property
    def best_upper(self) -> Optional[int]:
        return min(self.upper.values(), default=None)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "r": self.r,
            "delta_max": self.max_degree,
            "k_degeneracy": self.degeneracy,
            "lower": self.lower,
            "upper": dict(self.upper),
            "best_upper": self.best_upper,
            "conjectured": dict(self.conjectured),
        }


def conjectured_order_bound(n: int) -> int:
    """n + ceil(log2 n) + 1."""
    return n + math.ceil(math.log2(n)) + 1 if n >= 1 else 0


def _radius_one_suffices(G: Graph, r: int) -> bool:
    # in a union of cliques every pair at distance <= r is already adjacent
    if r == 1:
        return True
    return all(H.m == H.n * (H.n - 1) // 2 for H, _ in components(G))


def bounds(G: Graph, r: int) -> Bounds:
    """All bounds that apply to ``G`` at radius ``r``.

    Upper-bound keys: ``general`` (4*Delta, r=1), ``forest`` (Delta+3, r=1),
    ``degenerate`` (min(k*Delta+3, 4*Delta) for k >= 2, r=1), ``small_k``
    (k*Delta+3 for k <= 3, r=1), ``tree`` (Delta+3 at r=2 with Delta >= 2,
    2*Delta+1 at r=3 with Delta >= 3). The radius-1 bounds also apply at
    any ``r`` when every component is complete.
    """
    D = G.max_degree
    k = degeneracy(G).k
    b = Bounds(G.n, G.m, r, D, k, lower_bound(G, r))
    if G.m == 0:
        b.upper["trivial"] = 1
        return b
    if _radius_one_suffices(G, r):
        b.upper["general"] = 4 * D
        if is_forest(G):
            b.upper["forest"] = D + 3
        if k >= 2:
            b.upper["degenerate"] = min(k * D + 3, 4 * D)
        if k <= 3:
            b.upper["small_k"] = k * D + 3
    if is_tree(G):
        if r == 2 and D >= 2:
            b.upper["tree"] = D + 3
        if r == 3 and D >= 3:
            b.upper["tree"] = 2 * D + 1
    b.conjectured["order"] = conjectured_order_bound(G.n)
    if r == 1:
        b.conjectured["twice_degree_plus_c"] = None
    return b


def proven_upper_bound(G: Graph, r: int) -> Optional[int]:
    return bounds(G, r).best_upper
