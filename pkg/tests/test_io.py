import json

import pytest

from vsdtc.coloring import TotalColoring
from vsdtc.errors import IncompleteColoring, InvalidInput
from vsdtc.graph import generate, path_graph
from vsdtc.io import (
    coloring_document,
    coloring_from_document,
    dump_coloring,
    format_graph,
    parse_graph,
    read_coloring,
    read_graph,
    require_total,
    write_graph,
)
from vsdtc.solver import chromatic_number


def test_graph_round_trip(tmp_path):
    G = generate("random_connected", 9, 0.3, seed=5)
    path = tmp_path / "g.txt"
    write_graph(G, path, ("hello",))
    assert read_graph(path) == G
    assert path.read_bytes().count(b"\r") == 0


def test_parse_tolerates_comments_and_dimacs_header():
    G = parse_graph("c a comment\np edge 3 2\ne 1 2\n\ne 2 3\n")
    assert G.edges == ((0, 1), (1, 2))


@pytest.mark.parametrize(
    "text",
    [
        "e 1 2\n",
        "p 3 1\ne 1 4\n",
        "p 3 2\ne 1 2\n",
        "p 3 1\nx 1 2\n",
        "p 3 1\ne 1\n",
        "p 3\n",
        "",
        "p 3 1\np 3 1\ne 1 2\n",
        "p 2 1\ne 1 1\n",
    ],
)
def test_parse_errors(text):
    with pytest.raises(InvalidInput):
        parse_graph(text)


def test_coloring_round_trip(tmp_path):
    G = path_graph(5)
    res = chromatic_number(G, 2)
    text = dump_coloring(G, res.witness, 2)
    doc = json.loads(text)
    assert doc["verification"]["valid"] is True
    assert doc["edges"][0] == {"u": 0, "v": 1, "color": res.witness.edge_colors[0]}
    path = tmp_path / "c.json"
    path.write_text(text)
    assert read_coloring(G, path) == res.witness


def test_coloring_document_partial_and_errors(tmp_path):
    G = path_graph(3)
    f = TotalColoring(4, [1, None, 1], [2, 4])
    doc = coloring_document(G, f, 1)
    assert doc["verification"] is None
    back = coloring_from_document(G, doc)
    assert back.vertex_colors == [1, None, 1]
    with pytest.raises(IncompleteColoring):
        require_total(back)
    with pytest.raises(InvalidInput):
        coloring_from_document(G, {"palette_size": 4, "vertices": [1, 2], "edges": []})
    with pytest.raises(InvalidInput):
        coloring_from_document(G, {"vertices": [1, 2, 3]})
    dup = {"palette_size": 4, "vertices": [1, 3, 1], "edges": [{"u": 0, "v": 1, "color": 2}, {"u": 1, "v": 0, "color": 2}]}
    with pytest.raises(InvalidInput):
        coloring_from_document(G, dup)
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InvalidInput):
        read_coloring(G, bad)
    assert format_graph(G).startswith("p 3 2\n")
