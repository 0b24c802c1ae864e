import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ehtw.errors import InputError
from ehtw.graph import (
    Graph,
    bits,
    clique_number,
    complete_graph,
    component_masks,
    cycle_graph,
    degeneracy_order,
    grid_graph,
    induced_subgraph,
    is_induced_path,
    mask_tuple,
    petersen_graph,
    to_mask,
)
from ehtw.io import format_graph, format_td, parse_graph, parse_td, parse_weights
from ehtw.treedec import TreeDecomposition


@st.composite
def graphs(draw, max_n=10):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, chosen)


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def test_basic_queries():
    g = cycle_graph(5)
    assert g.n == 5 and g.m == 5
    assert g.adj(0) == (1, 4)
    assert g.has_edge(4, 0) and not g.has_edge(0, 2)
    assert mask_tuple(g.closed_mask(0)) == (0, 1, 4)
    assert list(bits(0b1011)) == [0, 1, 3]
    assert to_mask([0, 1, 3]) == 0b1011


def test_rejects_bad_edges():
    with pytest.raises(InputError):
        Graph(3, [(0, 0)])
    with pytest.raises(InputError):
        Graph(3, [(0, 3)])


def test_induced_subgraph_remaps():
    h, remap = induced_subgraph(cycle_graph(6), [1, 2, 3, 5])
    assert remap == {1: 0, 2: 1, 3: 2, 5: 3}
    assert h.edges == ((0, 1), (1, 2))


def test_named_graphs():
    assert petersen_graph().m == 15
    assert grid_graph(3, 3).m == 12
    assert clique_number(complete_graph(5)).size == 5
    assert clique_number(petersen_graph()).size == 2


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_against_networkx(g):
    h = to_nx(g)
    assert len(component_masks(g, g.full_mask)) == nx.number_connected_components(h)
    if g.n:
        omega = max(len(c) for c in nx.find_cliques(h))
        assert clique_number(g).size == omega
        core = max(nx.core_number(h).values())
        assert degeneracy_order(g)[1] == core


@settings(max_examples=100, deadline=None)
@given(graphs(), st.sampled_from(["edgelist", "dimacs", "pace"]))
def test_format_round_trip(g, fmt):
    text = format_graph(g, fmt)
    assert parse_graph(text, fmt) == g
    assert parse_graph(text) == g  # format sniffing


def test_comments_and_blank_lines():
    text = "# a triangle\n3 3\n\n0 1\n1 2 \n# chord\n0 2\n"
    assert parse_graph(text).m == 3
    dimacs = "c hello\np edge 3 2\ne 1 2\ne 2 3\n"
    assert parse_graph(dimacs).edges == ((0, 1), (1, 2))


@pytest.mark.parametrize(
    "text,line",
    [
        ("3 2\n0 1\n0 x\n", 3),
        ("3 1\n0 5\n", 2),
        ("3 1\n1 1\n", 2),
        ("3 2\n0 1\n1 0\n", 3),
        ("3\n", 1),
        ("p edge 3 1\n0 1\n", 2),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(InputError) as exc:
        parse_graph(text)
    assert exc.value.line == line
    assert f"line {line}" in str(exc.value)


def test_edge_count_mismatch():
    with pytest.raises(InputError):
        parse_graph("3 2\n0 1\n")


def test_weights():
    w = parse_weights("0 1 2\n# x\n2 3\n", 4)
    assert w == {0: 0.5, 2: 3}
    with pytest.raises(InputError):
        parse_weights("0 1 0\n", 2)
    with pytest.raises(InputError):
        parse_weights("5 1\n", 2)


def test_pace_td_round_trip_is_bit_exact():
    text = "s td 3 3 5\nb 1 1 2 3\nb 2 1 2 4\nb 3 1 2 5\n1 3\n2 3\n"
    td = parse_td(text)
    assert td.bags == ((0, 1, 2), (0, 1, 3), (0, 1, 4))
    assert format_td(td) == text


def test_pace_td_errors():
    with pytest.raises(InputError) as exc:
        parse_td("s td 1 2 3\nb 1 1 9\n")
    assert exc.value.line == 2
    with pytest.raises(InputError):
        parse_td("s td 2 2 3\nb 1 1 2\n")


def test_random_td_round_trip():
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(1, 8)
        k = rng.randint(1, 5)
        bags = [sorted(rng.sample(range(n), rng.randint(1, n))) for _ in range(k)]
        edges = [(rng.randrange(i), i) for i in range(1, k)]
        td = TreeDecomposition(bags, edges, n=n)
        assert format_td(parse_td(format_td(td))) == format_td(td)


def test_induced_path_check():
    g = cycle_graph(6)
    assert is_induced_path(g, [0, 1, 2, 3])
    assert not is_induced_path(g, [0, 1, 2, 3, 4, 5])
