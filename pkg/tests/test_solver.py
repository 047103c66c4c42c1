import json
import random
from itertools import combinations

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import graphs, load_g6, random_graph
from oracles import naive_local_tau, naive_tau_k
from pendant_tc.families import Complete, CompleteMultipartite, Path, Wheel, build, parse_family
from pendant_tc.graph_core import Graph, GraphError, is_connected, min_degree, vertex_connectivity
from pendant_tc.solver import (
    BUDGET_ENV,
    BudgetExceeded,
    CapacityError,
    PendantTree,
    ReductionError,
    TreePacking,
    canonical_internal_set,
    default_budget,
    local_tau,
    minimal_internal_sets,
    tau_k,
    tree_from_internal_set,
    upper_bound_tau,
    verify_packing,
)

K5_MINUS_01 = Graph.from_edges(5, [e for e in combinations(range(5), 2) if e != (0, 1)])


# ---------------------------------------------------------------- reduction

def test_star_tree_from_single_internal_vertex():
    t = tree_from_internal_set(build(Complete(4)), [0, 1, 2], [3])
    assert t.edges == ((0, 3), (1, 3), (2, 3))
    assert canonical_internal_set(t) == (3,)


def test_smallest_neighbour_rule():
    t = tree_from_internal_set(K5_MINUS_01, [0, 2, 4], [1, 3])
    assert t.edges == ((0, 3), (1, 2), (1, 3), (1, 4))
    assert verify_packing(K5_MINUS_01, TreePacking(t.terminals, (t,))).ok


def test_two_terminal_direct_edge():
    t = tree_from_internal_set(build(Complete(3)), [0, 1], [])
    assert t.internal == () and t.edges == ((0, 1),)


def test_reduction_errors_name_the_problem():
    with pytest.raises(ReductionError, match=r"\[0\]"):
        tree_from_internal_set(K5_MINUS_01, [0, 2, 3], [1])
    with pytest.raises(ReductionError, match="connected"):
        tree_from_internal_set(build(Path(5)), [1, 3], [0, 4])
    with pytest.raises(ReductionError):
        tree_from_internal_set(build(Complete(4)), [0, 1, 2], [])
    with pytest.raises(ReductionError):
        tree_from_internal_set(build(Complete(4)), [0, 1, 2], [2, 3])


@given(graphs(min_n=3, max_n=8), st.data())
def test_reduction_round_trip(g, data):
    k = data.draw(st.integers(2, g.n - 1))
    s = tuple(sorted(data.draw(st.sets(st.integers(0, g.n - 1), min_size=k, max_size=k))))
    free = [v for v in range(g.n) if v not in s]
    i = tuple(sorted(data.draw(st.sets(st.sampled_from(free), min_size=1))))
    try:
        t = tree_from_internal_set(g, s, i)
    except ReductionError:
        return
    assert canonical_internal_set(t) == i
    assert verify_packing(g, TreePacking(s, (t,))).ok
    again = tree_from_internal_set(g, s, canonical_internal_set(t))
    assert again == t


# ---------------------------------------------------------------- bounds

def test_upper_bound_examples():
    assert upper_bound_tau(build(Complete(7)), [0, 1, 2]) == 4
    assert upper_bound_tau(build(Wheel(6)), [1, 2, 3]) == 1
    assert upper_bound_tau(build(Path(5)), [0, 2, 4]) <= 1
    assert upper_bound_tau(build(Complete(4)), range(4)) == 0
    # K_3 with k=2: the direct edge and the path through the third vertex
    assert upper_bound_tau(build(Complete(3)), [0, 1]) == 2


@given(graphs(min_n=2, max_n=7), st.data())
def test_solver_within_upper_bound(g, data):
    k = data.draw(st.integers(2, g.n))
    s = data.draw(st.sets(st.integers(0, g.n - 1), min_size=k, max_size=k))
    res = local_tau(g, s)
    assert res.tau <= upper_bound_tau(g, s) == res.upper_bound_used
    assert res.tau == len(res.witness.trees)


# ---------------------------------------------------------------- local values

def test_local_examples():
    assert local_tau(build(Complete(6)), [0, 1, 2]).tau == 3
    res = local_tau(K5_MINUS_01, [0, 1, 4])
    assert res.tau == 2
    assert [t.internal for t in res.witness.trees] == [(2,), (3,)]
    assert local_tau(K5_MINUS_01, [0, 2, 3]).tau == 1
    w6 = build(Wheel(6))
    for s in combinations(range(5), 3):
        assert local_tau(w6, s).tau == 1


def test_full_terminal_set_is_zero():
    for n in (2, 3, 5):
        assert local_tau(build(Complete(n)), range(n)).tau == 0


def test_two_terminal_semantics():
    # K_3: the edge 01 plus the path 0-2-1
    res = local_tau(build(Complete(3)), [0, 1])
    assert res.tau == 2
    assert verify_packing(build(Complete(3)), res.witness).ok
    assert local_tau(build(Path(3)), [0, 2]).tau == 1


def test_stop_at_gives_lower_bound():
    res = local_tau(build(Complete(8)), [0, 1, 2], stop_at=2)
    assert res.tau == 2


def test_local_on_disconnected_graph():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4)])
    assert local_tau(g, [0, 1]).tau == 2
    assert local_tau(g, [0, 3]).tau == 0


def test_local_size_checks():
    with pytest.raises(GraphError):
        local_tau(build(Complete(4)), [0])
    with pytest.raises(CapacityError):
        local_tau(build(Complete(26)), [0, 1, 2])


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        tau_k(build(Complete(9)), 3, budget=5)


def test_budget_env(monkeypatch):
    monkeypatch.setenv(BUDGET_ENV, "123")
    assert default_budget() == 123
    monkeypatch.setenv(BUDGET_ENV, "nope")
    with pytest.raises(CapacityError):
        default_budget()
    monkeypatch.setenv(BUDGET_ENV, "3")
    with pytest.raises(BudgetExceeded):
        tau_k(build(Complete(8)), 3)


# ---------------------------------------------------------------- global values

@pytest.mark.parametrize(
    "spec,k,expected",
    [
        (Complete(7), 3, 4),
        (CompleteMultipartite((3, 3)), 3, 1),
        (CompleteMultipartite((2, 2, 2)), 3, 1),
        (Path(5), 3, 0),
        (Wheel(6), 3, 1),
        (CompleteMultipartite((4, 5)), 3, 2),
    ],
)
def test_tau_k_examples(spec, k, expected):
    g = build(spec)
    res = tau_k(g, k)
    assert res.tau_k == expected
    assert verify_packing(g, res.witness).ok
    assert local_tau(g, res.minimizing_set).tau == expected


def test_disconnected_is_zero():
    g = build(parse_family("K_4+K_3"))
    res = tau_k(g, 3)
    assert res.tau_k == 0
    assert res.minimizing_set == (0, 1, 4)


def test_minimizing_set_is_lexicographically_first():
    rng = random.Random(2)
    for _ in range(30):
        g = random_graph(rng, 6, 0.7)
        if not is_connected(g):
            continue
        res = tau_k(g, 3)
        values = {s: local_tau(g, s).tau for s in combinations(range(6), 3)}
        assert res.tau_k == min(values.values())
        assert res.minimizing_set == min(s for s, v in values.items() if v == res.tau_k)


def test_deterministic_witness():
    g = build(CompleteMultipartite((3, 3, 3)))
    a = tau_k(g, 3).witness.to_json()
    b = tau_k(g, 3).witness.to_json()
    assert a == b


@given(graphs(min_n=3, max_n=7), st.data())
def test_lemma_bounds_on_global_value(g, data):
    k = data.draw(st.integers(3, g.n))
    value = tau_k(g, k).tau_k
    assert value <= g.n - k
    if value >= 1:
        assert min_degree(g) >= k + value - 1
        assert vertex_connectivity(g) >= k + value - 2


# ---------------------------------------------------------------- oracle and monotonicity

def test_oracle_agreement_sample():
    rng = random.Random(9)
    graphs6 = load_g6("connected6.g6")
    for g in rng.sample(graphs6, 25):
        for s in rng.sample(list(combinations(range(6), 3)), 4):
            assert local_tau(g, s).tau == naive_local_tau(g, s)
        assert tau_k(g, 4).tau_k == naive_tau_k(g, 4)


def test_oracle_agreement_two_terminals():
    for g in load_g6("connected5.g6"):
        for s in combinations(range(5), 2):
            assert local_tau(g, s).tau == naive_local_tau(g, s)


@given(graphs(min_n=3, max_n=7), st.data())
def test_monotone_under_edge_addition(g, data):
    missing = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)]
    assume(missing)
    e = data.draw(st.sampled_from(missing))
    k = data.draw(st.integers(2, g.n))
    s = data.draw(st.sets(st.integers(0, g.n - 1), min_size=k, max_size=k))
    h = Graph.from_edges(g.n, g.edges() + [e])
    assert local_tau(h, s).tau >= local_tau(g, s).tau


def test_minimal_internal_sets_are_minimal():
    g = build(Wheel(7))
    sets = minimal_internal_sets(g, (0, 2, 4))
    for a in sets:
        for b in sets:
            assert a == b or a & b != a


# ---------------------------------------------------------------- verification

def _k6_packing():
    g = build(Complete(6))
    return g, local_tau(g, [0, 1, 2]).witness


def test_verify_accepts_solver_witness():
    g, p = _k6_packing()
    verdict = verify_packing(g, p)
    assert verdict.ok and verdict.boundary_exact
    assert verdict.boundary_counts == (3, 3, 3)


def test_verify_rejects_shared_vertex():
    g, p = _k6_packing()
    t0, t1 = p.trees[0], p.trees[1]
    clash = tree_from_internal_set(g, p.terminals, t0.internal)
    bad = TreePacking(p.terminals, (t0, clash, t1))
    assert "vertex shared" in verify_packing(g, bad).codes


def test_verify_rejects_terminal_degree():
    g, p = _k6_packing()
    t = p.trees[0]
    c = t.internal[0]
    # hang terminal 1 off terminal 0 instead of the centre: 0 gets degree 2
    edges = tuple(sorted({(0, c), (0, 1), (2, c)}))
    bad = TreePacking(p.terminals, (PendantTree(t.terminals, t.internal, edges),))
    assert "terminal degree" in verify_packing(g, bad).codes


def test_verify_rejects_non_tree_and_foreign_edges():
    g = build(Complete(6))
    terms = (0, 1, 2)
    cyc = PendantTree(terms, (3, 4), ((0, 3), (1, 3), (2, 4), (3, 4), (3, 4)))
    assert "not a tree" in verify_packing(g, TreePacking(terms, (cyc,))).codes
    p = build(Path(5))
    fake = PendantTree((0, 2), (4,), ((0, 4), (2, 4)))
    assert "edge not in graph" in verify_packing(p, TreePacking((0, 2), (fake,))).codes


def test_verify_boundary_count_at_least_k():
    g = build(Complete(6))
    terms = (0, 1, 2)
    # internal {3, 4}: edges 0-3, 1-3, 2-4, 3-4 cross the boundary three times
    t = tree_from_internal_set(g, terms, (3, 4))
    verdict = verify_packing(g, TreePacking(terms, (t,)))
    assert verdict.ok and verdict.boundary_counts == (3,)


def test_packing_json_shape():
    g, p = _k6_packing()
    data = json.loads(p.to_json())
    assert list(data) == ["terminals", "trees"]
    assert list(data["trees"][0]) == ["internal", "edges"]
    assert TreePacking.from_json(p.to_json()) == p
