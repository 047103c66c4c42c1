import random

import pytest

from conftest import load_g6, random_graph
from pendant_tc.families import Complete, Cycle, build, parse_family, ng_example_graph
from pendant_tc.graph_core import Graph, GraphError, complement
from pendant_tc.nordhaus_gaddum import (
    Attainment,
    check_near_n_ng,
    check_prop2,
    check_prop3,
    ng_evaluate,
)


def test_complete_graph_reaches_upper_sum():
    rec = ng_evaluate(build(Complete(8)), 3)
    assert (rec.tau_g, rec.tau_gbar, rec.sum) == (5, 0, 5)
    assert rec.attainment == Attainment.SUM_UPPER
    assert rec.product == 0 and rec.product_ok_floor_sq


def test_lower_sum_example():
    g = ng_example_graph(build(parse_family("C_4")))
    rec = ng_evaluate(g, 3)
    assert rec.sum == 0 and rec.attainment == Attainment.SUM_LOWER


def test_interior_example():
    # C_5 is self-complementary with tau_3 = 0, so use a graph where only G contributes
    g = complement(Graph.from_edges(8, [(0, 1)]))
    rec = ng_evaluate(g, 3)
    assert rec.tau_g == 4 and rec.tau_gbar == 0
    assert rec.attainment == Attainment.INTERIOR


def test_product_bound_forms():
    rec = ng_evaluate(build(Complete(8)), 3)
    assert rec.product_upper_floor_sq == 4  # floor(5/2)^2
    assert rec.product_upper_amgm == 6  # floor(25/4)


def test_evaluate_range_checks():
    with pytest.raises(GraphError):
        ng_evaluate(build(Complete(5)), 2)
    with pytest.raises(GraphError):
        ng_evaluate(build(Complete(5)), 6)


def test_random_order_eight_sums():
    rng = random.Random(21)
    for _ in range(200):
        g = random_graph(rng, 8, rng.random())
        rec = ng_evaluate(g, 3)
        assert rec.sum_ok and rec.product_ok_floor_sq, g


def test_all_connected_order_seven():
    for g in load_g6("connected7.g6"):
        rec = ng_evaluate(g, 3)
        assert rec.sum_ok and rec.product_ok_floor_sq
        assert check_prop3(g, 3).holds


def test_disconnected_sum_rule_over_order_seven():
    for g in load_g6("all7.g6"):
        assert check_prop2(g, 3).holds, g


def test_prop2_premise_is_disconnection():
    assert not check_prop2(build(Complete(6)), 3).premise
    chk = check_prop2(Graph.empty(6), 3)
    assert chk.premise and chk.conclusion


def test_near_n_examples():
    sums = {r.name: r.sum for r in check_near_n_ng(build(Complete(6)))}
    assert sums == {"tau_n": 0, "tau_n-1": 1, "tau_n-2": 2}
    records = check_near_n_ng(build(Cycle(6)))
    assert [r.sum for r in records] == [0, 0, 0]
    assert all(r.in_range and r.iff_holds for r in records)
    with pytest.raises(GraphError):
        check_near_n_ng(build(Complete(4)))


def test_near_n_sum_one_occurs():
    # recorded deviation: k = n-2 can give sum 1, e.g. K_6 minus a perfect matching
    g = complement(build(parse_family("3K_2")))
    rec = [r for r in check_near_n_ng(g) if r.name == "tau_n-2"][0]
    assert rec.sum == 1 and not rec.in_range


@pytest.mark.parametrize("n", [5, 6, 7])
def test_near_n_top_two_values(n):
    for g in load_g6(f"all{n}.g6"):
        records = check_near_n_ng(g)
        assert records[0].in_range and records[0].iff_holds
        assert records[1].in_range and records[1].iff_holds
