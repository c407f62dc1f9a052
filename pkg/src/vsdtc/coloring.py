"""Total colorings, color sets, and the properness / distinguishing checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Union

from .errors import BadVertex, IncompleteColoring, InvalidInput, PreconditionViolated
from .graph import Element, Graph, bfs_distances, require_no_isolated_edge


@dataclass(frozen=True)
class ColorSet:
    """Set of colors as a bitmask; bit ``c`` is set when color ``c`` is present."""

    mask: int = 0

    @classmethod
    def of(cls, colors: Iterable[int]) -> "ColorSet":
        m = 0
        for c in colors:
            if c < 1:
                raise InvalidInput(f"colors are 1-based, got {c}")
            m |= 1 << c
        return cls(m)

    def __contains__(self, c: int) -> bool:
        return c >= 1 and bool(self.mask >> c & 1)

    def __iter__(self) -> Iterator[int]:
        m, c = self.mask, 0
        while m:
            if m & 1:
                yield c
            m >>= 1
            c += 1

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __or__(self, other: "ColorSet") -> "ColorSet":
        return ColorSet(self.mask | other.mask)

    def __xor__(self, other: "ColorSet") -> "ColorSet":
        return ColorSet(self.mask ^ other.mask)

    def __le__(self, other: "ColorSet") -> bool:
        return self.mask & ~other.mask == 0

    def add(self, c: int) -> "ColorSet":
        return ColorSet(self.mask | 1 << c)

    def max_color(self) -> int:
        return self.mask.bit_length() - 1

    def __repr__(self):
        return "{" + ", ".join(map(str, self)) + "}"


SetLike = Union[ColorSet, Iterable[int]]


def as_color_set(s: SetLike) -> ColorSet:
    return s if isinstance(s, ColorSet) else ColorSet.of(s)


class TotalColoring:
    """Partial or total map from vertices and edges to colors ``1..palette_size``.

    ``None`` marks an unassigned element.
    """

    __slots__ = ("palette_size", "vertex_colors", "edge_colors")

    def __init__(self, palette_size: int, vertex_colors, edge_colors):
        self.palette_size = int(palette_size)
        self.vertex_colors: list[Optional[int]] = list(vertex_colors)
        self.edge_colors: list[Optional[int]] = list(edge_colors)
        for c in self.vertex_colors + self.edge_colors:
            if c is not None and not 1 <= c <= self.palette_size:
                raise InvalidInput(f"color {c} outside 1..{self.palette_size}")

    @classmethod
    def empty(cls, G: Graph, palette_size: int) -> "TotalColoring":
        return cls(palette_size, [None] * G.n, [None] * G.m)

    def copy(self) -> "TotalColoring":
        return TotalColoring(self.palette_size, self.vertex_colors, self.edge_colors)

    def __getitem__(self, x: Element) -> Optional[int]:
        return self.vertex_colors[x.index] if x.tag == "v" else self.edge_colors[x.index]

    def __setitem__(self, x: Element, c: Optional[int]) -> None:
        if c is not None and not 1 <= c <= self.palette_size:
            raise InvalidInput(f"color {c} outside 1..{self.palette_size}")
        if x.tag == "v":
            self.vertex_colors[x.index] = c
        else:
            self.edge_colors[x.index] = c

    def is_total(self) -> bool:
        return None not in self.vertex_colors and None not in self.edge_colors

    def colors_used(self) -> int:
        return len({c for c in self.vertex_colors + self.edge_colors if c is not None})

    def max_color(self) -> int:
        return max((c for c in self.vertex_colors + self.edge_colors if c is not None), default=0)

    def check_shape(self, G: Graph) -> None:
        if len(self.vertex_colors) != G.n or len(self.edge_colors) != G.m:
            raise InvalidInput(
                f"coloring has {len(self.vertex_colors)} vertices / {len(self.edge_colors)} edges,"
                f" graph has {G.n} / {G.m}"
            )

    def __eq__(self, other):
        return (
            isinstance(other, TotalColoring)
            and self.palette_size == other.palette_size
            and self.vertex_colors == other.vertex_colors
            and self.edge_colors == other.edge_colors
        )

    def __repr__(self):
        return (
            f"TotalColoring(palette_size={self.palette_size}, "
            f"vertex_colors={self.vertex_colors}, edge_colors={self.edge_colors})"
        )


ADJACENT_VERTICES = "adjacent-vertices"
ADJACENT_EDGES = "adjacent-edges"
INCIDENT = "incident"
SAME_COLOR_SET = "same-color-set"


@dataclass(frozen=True)
class Violation:
    kind: str
    first: Element
    second: Element
    distance: Optional[int] = None


@dataclass
class VerificationReport:
    """``distinguishing`` is ``None`` when only properness was checked."""

    proper: bool
    distinguishing: Optional[bool]
    violations: list[Violation] = field(default_factory=list)
    r: Optional[int] = None

    @property
    def valid(self) -> bool:
        return self.proper and self.distinguishing is not False and not self.violations

    def summary(self) -> dict:
        return {
            "valid": self.valid,
            "proper": self.proper,
            "distinguishing": self.distinguishing,
            "r": self.r,
            "violations": [
                {"kind": v.kind, "first": repr(v.first), "second": repr(v.second), "distance": v.distance}
                for v in self.violations
            ],
        }


def _require_total(G: Graph, f: TotalColoring) -> None:
    f.check_shape(G)
    if not f.is_total():
        raise IncompleteColoring("coloring has unassigned elements")


def _proper_violations(G: Graph, f: TotalColoring) -> list[Violation]:
    vc, ec = f.vertex_colors, f.edge_colors
    out = []
    for i, (a, b) in enumerate(G.edges):
        if vc[a] == vc[b]:
            out.append(Violation(ADJACENT_VERTICES, Element.vertex(a), Element.vertex(b)))
        for u in (a, b):
            if ec[i] == vc[u]:
                out.append(Violation(INCIDENT, Element.vertex(u), Element.edge(i)))
    for u in range(G.n):
        inc = G.incident[u]
        for x in range(len(inc)):
            for y in range(x + 1, len(inc)):
                if ec[inc[x]] == ec[inc[y]]:
                    e1, e2 = sorted((inc[x], inc[y]))
                    out.append(Violation(ADJACENT_EDGES, Element.edge(e1), Element.edge(e2)))
    return out


def is_proper_total(G: Graph, f: TotalColoring) -> VerificationReport:
    _require_total(G, f)
    violations = _proper_violations(G, f)
    return VerificationReport(proper=not violations, distinguishing=None, violations=violations)


def color_set_mask(G: Graph, f: TotalColoring, u: int) -> int:
    vc, ec = f.vertex_colors, f.edge_colors
    m = 1 << vc[u] if vc[u] is not None else None
    if m is None:
        raise BadVertex(f"vertex {u} is uncolored")
    for w, e in zip(G.neighbors[u], G.incident[u]):
        a, b = vc[w], ec[e]
        if a is None or b is None:
            raise BadVertex(f"vertex {u} has an uncolored element in its incidence set")
        m |= 1 << a | 1 << b
    return m


def color_set(G: Graph, f: TotalColoring, u: int) -> ColorSet:
    """Colors on ``u``, its neighbors, and its incident edges."""
    f.check_shape(G)
    if not 0 <= u < G.n:
        raise InvalidInput(f"vertex {u} out of range")
    return ColorSet(color_set_mask(G, f, u))


def edge_color_set(G: Graph, f: TotalColoring, u: int) -> ColorSet:
    """Colors on the edges at ``u`` only."""
    m = 0
    for e in G.incident[u]:
        c = f.edge_colors[e]
        if c is None:
            raise BadVertex(f"vertex {u} has an uncolored incident edge")
        m |= 1 << c
    return ColorSet(m)


def _check_radius(r: int) -> None:
    if not isinstance(r, int) or r < 1:
        raise InvalidInput(f"r must be an integer >= 1, got {r!r}")


def verify_r_vsdtc(G: Graph, f: TotalColoring, r: int) -> VerificationReport:
    """Properness plus distinct color sets for every pair at distance ``1..r``."""
    _check_radius(r)
    _require_total(G, f)
    violations = _proper_violations(G, f)
    proper = not violations
    masks = [color_set_mask(G, f, u) for u in range(G.n)]
    clashes = []
    for u in range(G.n):
        for w, d in bfs_distances(G, u, r).items():
            if w > u and masks[w] == masks[u]:
                clashes.append(Violation(SAME_COLOR_SET, Element.vertex(u), Element.vertex(w), d))
    return VerificationReport(proper, not clashes, violations + clashes, r)


def verify_r_sec(G: Graph, edge_colors, r: int) -> bool:
    """Proper edge coloring whose edge-color sets differ at distance ``1..r``."""
    _check_radius(r)
    sets = []
    for u in range(G.n):
        cols = [edge_colors[e] for e in G.incident[u]]
        if None in cols or len(set(cols)) != len(cols):
            return False
        sets.append(frozenset(cols))
    for u in range(G.n):
        for w in bfs_distances(G, u, r):
            if w > u and sets[w] == sets[u]:
                return False
    return True


def lower_bound(G: Graph, r: int) -> int:
    """Max degree plus one, plus one more if two max-degree vertices are within ``r``."""
    _check_radius(r)
    require_no_isolated_edge(G)
    delta = G.max_degree
    tops = [u for u in range(G.n) if G.degree(u) == delta]
    if delta > 0:
        top_set = set(tops)
        for u in tops:
            if any(w != u and w in top_set for w in bfs_distances(G, u, r)):
                return delta + 2
    return delta + 1


def _pair_masks(A: SetLike, B: SetLike, palette: int) -> tuple[int, int]:
    a, b = as_color_set(A).mask, as_color_set(B).mask
    if (a | b) >> (palette + 1):
        raise InvalidInput(f"set contains a color above the palette size {palette}")
    if a == b:
        raise PreconditionViolated("the two sets must differ")
    return a, b


def _single_bit(x: int) -> Optional[int]:
    if x and x & (x - 1) == 0:
        return x.bit_length() - 1
    return None


def find_extension_color(A: SetLike, B: SetLike, palette: int) -> Optional[int]:
    """The color ``c`` with ``A == B | {c}`` or ``B == A | {c}``, if any."""
    a, b = _pair_masks(A, B, palette)
    return _single_bit(a ^ b)


def find_equalizing_color(A: SetLike, B: SetLike, palette: int) -> Optional[int]:
    """The color ``c`` with ``A | {c} == B | {c}``, if any."""
    a, b = _pair_masks(A, B, palette)
    # A | {c} == B | {c} holds exactly when A ^ B is contained in {c}.
    return _single_bit(a ^ b)
