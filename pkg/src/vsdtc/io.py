"""Graph text files and coloring JSON documents.

Graph files::

    c any comment
    p <n> <m>
    e <u> <v>        (1-based, m lines)

Coloring documents hold ``palette_size``, ``vertices`` (colors by 0-based
vertex index), ``edges`` (``{"u", "v", "color"}`` with 0-based endpoints),
``r`` and a ``verification`` block.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional, TextIO, Union

from .coloring import TotalColoring, VerificationReport, verify_r_vsdtc
from .errors import IncompleteColoring, InvalidInput
from .graph import Graph

PathLike = Union[str, Path]


def format_graph(G: Graph, comments: tuple[str, ...] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p {G.n} {G.m}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in G.edges)
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    n = m = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        tag = parts[0]
        try:
            if tag == "p":
                if n is not None:
                    raise InvalidInput(f"line {lineno}: duplicate problem line")
                nums = [p for p in parts[1:] if not p.isalpha()]  # tolerate "p edge n m"
                n, m = int(nums[0]), int(nums[1])
            elif tag == "e":
                if n is None:
                    raise InvalidInput(f"line {lineno}: edge before problem line")
                u, v = int(parts[1]), int(parts[2])
                if not (1 <= u <= n and 1 <= v <= n):
                    raise InvalidInput(f"line {lineno}: vertex out of range 1..{n}")
                edges.append((u - 1, v - 1))
            else:
                raise InvalidInput(f"line {lineno}: unknown line type {tag!r}")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, InvalidInput):
                raise
            raise InvalidInput(f"line {lineno}: malformed {tag!r} line") from None
    if n is None:
        raise InvalidInput("missing problem line")
    if len(edges) != m:
        raise InvalidInput(f"problem line declares {m} edges, found {len(edges)}")
    return Graph(n, edges)


def read_graph(path: PathLike) -> Graph:
    return parse_graph(Path(path).read_text())


def write_graph(G: Graph, path: PathLike, comments: tuple[str, ...] = ()) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(format_graph(G, comments))


def coloring_document(
    G: Graph, f: TotalColoring, r: Optional[int] = None, report: Optional[VerificationReport] = None
) -> dict:
    if report is None and r is not None and f.is_total():
        report = verify_r_vsdtc(G, f, r)
    return {
        "palette_size": f.palette_size,
        "vertices": list(f.vertex_colors),
        "edges": [{"u": u, "v": v, "color": f.edge_colors[i]} for i, (u, v) in enumerate(G.edges)],
        "r": r,
        "verification": report.summary() if report is not None else None,
    }


def dump_coloring(G: Graph, f: TotalColoring, r: Optional[int] = None, fh: Optional[TextIO] = None) -> str:
    text = json.dumps(coloring_document(G, f, r), indent=2)
    if fh is not None:
        fh.write(text + "\n")
    return text


def coloring_from_document(G: Graph, doc: dict) -> TotalColoring:
    try:
        palette = int(doc["palette_size"])
        vertices = doc["vertices"]
        edges = doc["edges"]
    except (KeyError, TypeError, ValueError):
        raise InvalidInput("coloring document needs palette_size, vertices and edges") from None
    if len(vertices) != G.n:
        raise InvalidInput(f"coloring lists {len(vertices)} vertices, graph has {G.n}")
    edge_colors: list = [None] * G.m
    seen = set()
    for item in edges:
        try:
            u, v, c = int(item["u"]), int(item["v"]), item["color"]
        except (KeyError, TypeError, ValueError):
            raise InvalidInput(f"malformed edge entry {item!r}") from None
        i = G.edge_index(u, v)
        if i in seen:
            raise InvalidInput(f"edge ({u}, {v}) colored twice")
        seen.add(i)
        edge_colors[i] = None if c is None else int(c)
    return TotalColoring(palette, [None if c is None else int(c) for c in vertices], edge_colors)


def read_coloring(G: Graph, path: PathLike) -> TotalColoring:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"coloring file is not JSON: {exc}") from None
    return coloring_from_document(G, doc)


def require_total(f: TotalColoring) -> None:
    if not f.is_total():
        raise IncompleteColoring("coloring has unassigned elements")
