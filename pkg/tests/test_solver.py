import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_force_exists
from vsdtc.coloring import lower_bound, verify_r_vsdtc
from vsdtc.errors import InvalidInput, IsolatedEdge, SearchTimeout
from vsdtc.graph import (
    Graph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    generate,
    has_isolated_edge,
    path_graph,
)
from vsdtc.solver import SearchBudget, chromatic_number, element_order, exists_coloring


def test_exists_examples():
    assert exists_coloring(path_graph(3), 1, 4) is not None
    assert exists_coloring(path_graph(3), 1, 3) is None
    assert exists_coloring(complete_graph(3), 1, 4) is None
    w = exists_coloring(complete_graph(3), 1, 5)
    assert w is not None and verify_r_vsdtc(complete_graph(3), w, 1).valid


@pytest.mark.parametrize(
    "G, expect",
    [
        (path_graph(4), 5),
        (complete_graph(4), 6),
        (disjoint_union(path_graph(3), path_graph(4)), 5),
        (path_graph(3), 4),
        (cycle_graph(5), 5),
    ],
)
def test_chromatic_number_examples(G, expect):
    res = chromatic_number(G, 1)
    assert res.status == "exact"
    assert res.chromatic_number == expect
    assert res.chromatic_number >= res.lower_bound_used
    assert verify_r_vsdtc(G, res.witness, 1).valid
    assert res.witness.max_color() <= expect


def test_isolated_edge_rejected():
    with pytest.raises(IsolatedEdge):
        chromatic_number(path_graph(2), 1)
    with pytest.raises(IsolatedEdge):
        exists_coloring(disjoint_union(path_graph(3), path_graph(2)), 2, 6)


def test_bad_arguments():
    with pytest.raises(InvalidInput):
        exists_coloring(path_graph(3), 1, 0)
    with pytest.raises(InvalidInput):
        chromatic_number(path_graph(3), 0)
    with pytest.raises(InvalidInput):
        SearchBudget(max_nodes=0)


def test_trivial_graphs():
    assert chromatic_number(Graph(0), 1).chromatic_number == 0
    res = chromatic_number(Graph(3), 2)
    assert res.chromatic_number == 1 and res.witness.vertex_colors == [1, 1, 1]


def test_timeout_is_reported_not_guessed():
    res = chromatic_number(complete_graph(6), 1, SearchBudget(max_nodes=5000))
    assert res.status == "timeout"
    assert res.chromatic_number is None and res.witness is None
    with pytest.raises(SearchTimeout):
        exists_coloring(complete_graph(6), 1, 9, SearchBudget(max_nodes=5000))


def test_element_order_is_a_permutation():
    for seed in range(10):
        G = generate("random_connected", 9, 0.3, seed=seed)
        order = element_order(G)
        assert sorted(order) == list(range(G.n + G.m))


def test_lower_bound_source_recorded():
    res = chromatic_number(path_graph(4), 1)
    assert res.lower_bound_used == lower_bound(path_graph(4), 1) == 4
    assert "+2" in res.lower_bound_source
    assert "+1" in chromatic_number(complete_bipartite_graph(1, 3), 1).lower_bound_source


@pytest.mark.parametrize("seed", range(25))
def test_prune_does_not_change_answers(seed):
    rng = random.Random(seed)
    G = generate("random_connected", rng.randint(3, 7), 0.35, seed=seed)
    r = rng.randint(1, 3)
    lb = lower_bound(G, r)
    for kappa in (lb - 1, lb, lb + 1):
        a = exists_coloring(G, r, kappa, prune=True)
        b = exists_coloring(G, r, kappa, prune=False)
        assert (a is None) == (b is None)


def test_upper_cap_matches_plain_search():
    for seed in range(15):
        G = generate("random_connected", 6, 0.3, seed=seed)
        for r in (1, 2):
            a = chromatic_number(G, r, use_upper=True).chromatic_number
            b = chromatic_number(G, r, use_upper=False).chromatic_number
            assert a == b


@st.composite
def small_graphs(draw):
    n = draw(st.integers(1, 5))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=min(len(pairs), 7 - n))) if pairs else []
    return Graph(n, edges)


@settings(max_examples=80, deadline=None)
@given(small_graphs(), st.integers(1, 3))
def test_exists_matches_brute_force(G, r):
    if has_isolated_edge(G):
        return
    for kappa in range(1, 6):
        assert (exists_coloring(G, r, kappa) is not None) == brute_force_exists(G, kappa, (r,))[r]


@settings(max_examples=60, deadline=None)
@given(small_graphs())
def test_monotone_in_r(G):
    if has_isolated_edge(G):
        return
    vals = [chromatic_number(G, r).chromatic_number for r in (1, 2, 3)]
    assert vals == sorted(vals)
