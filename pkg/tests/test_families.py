import random

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import load_g6
from pendant_tc.families import (
    ComplementOf,
    Complete,
    CompleteMultipartite,
    Cycle,
    DisjointUnion,
    Empty,
    Path,
    Threshold,
    Wheel,
    build,
    build_threshold,
    complement_family_for_theorem6,
    complete_bipartite,
    delta2_graphs,
    host_graph,
    ng_example_graph,
    observation2_report,
    parse_family,
    threshold_weights,
)
from pendant_tc.graph_core import (
    GraphError,
    complement,
    component_shapes,
    degree_sequence,
    max_degree,
    min_degree,
    vertex_connectivity,
)


def test_complete():
    g = build(Complete(5))
    assert g.edge_count == 10
    assert set(degree_sequence(g)) == {4}
    assert vertex_connectivity(g) == 4


def test_wheel_labelling():
    g = build(Wheel(6))
    assert g.degree(5) == 5
    assert [g.degree(v) for v in range(5)] == [3] * 5
    assert g.edge_count == 10
    for n in range(5, 10):
        assert min_degree(build(Wheel(n))) == 3


def test_multipartite():
    g = build(CompleteMultipartite((3, 3, 3)))
    assert g.edge_count == 27
    assert set(degree_sequence(g)) == {6}
    assert CompleteMultipartite((4, 2, 3)).parts == (2, 3, 4)
    assert build(complete_bipartite(2, 3)).edge_count == 6


@pytest.mark.parametrize("bad", [Complete(0), Wheel(3), Cycle(2), Path(0), CompleteMultipartite((0, 2))])
def test_invalid_sizes(bad):
    with pytest.raises(GraphError):
        build(bad)


def test_threshold_construction():
    assert build_threshold("dddd") == build(Complete(4))
    # first vertex counts as isolated whichever symbol is used
    assert build_threshold("iid") == build_threshold("did")
    assert sorted(degree_sequence(build_threshold("iid"))) == [1, 1, 2]
    assert nx.is_isomorphic(nx.path_graph(3), nx.Graph(build_threshold("iid").edges()))
    with pytest.raises(GraphError):
        build_threshold("")
    with pytest.raises(GraphError):
        build_threshold("idx")


def test_threshold_weights_realise_graph():
    rng = random.Random(3)
    for _ in range(100):
        seq = "".join(rng.choice("id") for _ in range(rng.randint(1, 10)))
        g = build_threshold(seq)
        w = threshold_weights(seq)
        for u in range(g.n):
            for v in range(u + 1, g.n):
                assert g.has_edge(u, v) == (w[u] + w[v] >= 1)


def test_threshold_structure_on_200_sequences():
    rng = random.Random(5)
    for _ in range(200):
        seq = "".join(rng.choice("id") for _ in range(rng.randint(2, 10)))
        report = observation2_report(build_threshold(seq), threshold_weights(seq))
        assert all(report.values()), (seq, report)


@pytest.mark.parametrize(
    "text,spec",
    [
        ("K_5", Complete(5)),
        ("K5", Complete(5)),
        ("K_{3,3}", CompleteMultipartite((3, 3))),
        ("K_{3,3,3}", CompleteMultipartite((3, 3, 3))),
        ("W_6", Wheel(6)),
        ("threshold:iid", Threshold("iid")),
        ("compl:C7+3K1", ComplementOf(DisjointUnion((Cycle(7), Empty(3))))),
        ("2K_2", DisjointUnion((Complete(2), Complete(2)))),
    ],
)
def test_parse_family(text, spec):
    assert parse_family(text) == spec


@pytest.mark.parametrize("text", ["K_5", "K_{3,3}", "K_{2,3,4}", "W_6", "threshold:iid", "compl:C7+3K1", "P5+C4+2K1"])
def test_text_form_round_trip(text):
    spec = parse_family(text)
    assert build(parse_family(str(spec))) == build(spec)


@pytest.mark.parametrize("bad", ["", "X_3", "threshold:", "threshold:ixd", "W_3", "K_{3,}"])
def test_parse_family_errors(bad):
    with pytest.raises(GraphError):
        parse_family(bad)


@given(st.lists(st.sampled_from(["K1", "K2", "P3", "P4", "C3", "C4", "C5"]), min_size=1, max_size=5))
def test_union_shapes_round_trip(tokens):
    g = build(parse_family("+".join(tokens)))
    got = sorted(str(s) for s in component_shapes(g))
    want = sorted("P2" if t == "K2" else t for t in tokens)
    assert got == want


def test_host_examples():
    g = complement_family_for_theorem6("C4+C4", 10)
    assert sorted(str(s) for s in component_shapes(g)) == ["C4", "C4", "K1", "K1"]
    g = host_graph("P5+*K2", 9)
    assert sorted(str(s) for s in component_shapes(g)) == ["P2", "P2", "P5"]
    assert complement_family_for_theorem6("C7", 7) == build(Cycle(7))
    g = host_graph("C3+*K2", 8)
    assert sorted(str(s) for s in component_shapes(g)) == ["C3", "K1", "P2", "P2"]
    with pytest.raises(GraphError):
        host_graph("C7", 6)


def test_ng_example_minimum_degrees():
    for inner in ("C_4", "K_3", "P_3+K_1", "K_{2,2}"):
        g = ng_example_graph(build(parse_family(inner)))
        assert min_degree(g) == 2
        assert min_degree(complement(g)) == 2


def test_delta2_graphs_match_atlas_counts():
    for n in range(1, 8):
        expected = sum(1 for g in load_g6(f"all{n}.g6") if max_degree(g) <= 2)
        listed = delta2_graphs(n)
        assert len(listed) == expected
        assert all(g.n == n and max_degree(g) <= 2 for _, g in listed)
