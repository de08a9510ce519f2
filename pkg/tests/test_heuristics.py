import itertools
import math

import numpy as np
import pytest

from rspmetric import (
    EmptyCenterSetError,
    InfiniteDistanceError,
    Metric,
    OddVertexCountError,
    Seed,
    SizeCapExceededError,
    TooFewVerticesError,
    WeightedGraph,
    Graph,
    exact_kmedian,
    exact_matching,
    exact_tsp,
    first_k_centers,
    greedy_matching,
    has_improving_exchange,
    insertion_tour,
    nearest_neighbor_tour,
    tour_cost,
    trivial_kmedian,
    two_opt,
)
from conftest import rsp_instance
from oracles import min_matching_brute, min_tsp_brute

RULES = ("nearest", "farthest", "cheapest", "random")


def infinite_metric():
    return Metric.from_matrix(
        [[0.0, 1.0, math.inf, math.inf],
         [1.0, 0.0, math.inf, math.inf],
         [math.inf, math.inf, 0.0, 1.0],
         [math.inf, math.inf, 1.0, 0.0]]
    )


# -- matchings ----------------------------------------------------------------


def test_greedy_on_two_vertices_is_optimal():
    m = Metric.from_matrix([[0.0, 0.4], [0.4, 0.0]])
    greedy = greedy_matching(m)
    assert greedy.pairs == ((1, 2),)
    assert greedy.cost == exact_matching(m).cost == 0.4


def test_greedy_line_example(line_metric):
    got = greedy_matching(line_metric)
    assert got.pairs == ((2, 3), (1, 4))
    assert got.cost == pytest.approx(5.4, rel=1e-12)


def test_exact_matching_line_example(line_metric):
    # brute force over the 3 perfect matchings: 3.6, 5.4, 5.4
    got = exact_matching(line_metric)
    assert got.pairs == ((1, 2), (3, 4))
    assert got.cost == pytest.approx(3.6, rel=1e-12)


def test_matching_errors(line_metric):
    odd = Metric.from_matrix(np.zeros((3, 3)))
    with pytest.raises(OddVertexCountError):
        greedy_matching(odd)
    with pytest.raises(OddVertexCountError):
        exact_matching(odd)
    with pytest.raises(SizeCapExceededError):
        exact_matching(line_metric, cap=2)
    with pytest.raises(InfiniteDistanceError):
        greedy_matching(infinite_metric())
    with pytest.raises(InfiniteDistanceError):
        exact_matching(infinite_metric())


def test_exact_matching_agrees_with_enumeration():
    for n in (4, 6, 8):
        for seed in range(6):
            _, _, m = rsp_instance(n, seed=seed * 31 + n)
            assert exact_matching(m).cost == pytest.approx(
                min_matching_brute(m.dist), abs=1e-12
            )


def test_greedy_never_beats_optimal():
    for seed in range(10):
        _, _, m = rsp_instance(10, seed=seed + 50)
        assert greedy_matching(m).cost >= exact_matching(m).cost - 1e-12


def test_matching_is_perfect():
    _, _, m = rsp_instance(12, seed=3)
    for matching in (greedy_matching(m), exact_matching(m)):
        flat = [v for pair in matching.pairs for v in pair]
        assert sorted(flat) == list(range(1, 13))
        recomputed = math.fsum(m.d(a, b) for a, b in matching.pairs)
        assert matching.cost == pytest.approx(recomputed, rel=1e-12)


# -- nearest neighbor ---------------------------------------------------------


def test_nn_two_vertices():
    m = Metric.from_matrix([[0.0, 0.3], [0.3, 0.0]])
    assert nearest_neighbor_tour(m, 1).cost == pytest.approx(0.6)


def test_nn_line_example(line_metric):
    got = nearest_neighbor_tour(line_metric, start=1)
    assert got.order == (1, 2, 3, 4)
    assert got.cost == pytest.approx(9.0, rel=1e-12)


def test_nn_never_beats_optimal():
    for seed in range(8):
        _, _, m = rsp_instance(8, seed=seed + 11)
        assert nearest_neighbor_tour(m, 1).cost >= exact_tsp(m).cost - 1e-12


# -- insertion ----------------------------------------------------------------


def test_insertion_three_vertices_is_optimal():
    _, _, m = rsp_instance(3, seed=21)
    for rule in RULES:
        got = insertion_tour(m, rule, Seed(0))
        assert got.cost == pytest.approx(exact_tsp(m).cost, rel=1e-12)


def test_insertion_line_example(line_metric):
    assert insertion_tour(line_metric, "nearest").cost == pytest.approx(9.0, rel=1e-12)


@pytest.mark.parametrize("rule", RULES)
def test_insertion_never_beats_optimal(rule):
    for seed in range(6):
        _, _, m = rsp_instance(9, seed=seed + 70)
        got = insertion_tour(m, rule, Seed(seed))
        assert sorted(got.order) == list(range(1, 10))
        assert got.cost >= exact_tsp(m).cost - 1e-12


def test_random_rule_is_seeded():
    _, _, m = rsp_instance(10, seed=5)
    a = insertion_tour(m, "random", Seed(7))
    b = insertion_tour(m, "random", Seed(7))
    c = insertion_tour(m, "random", Seed(8))
    assert a == b
    assert a != c  # different seed, different vertex order almost surely


def test_insertion_errors():
    tiny = Metric.from_matrix([[0.0, 1.0], [1.0, 0.0]])
    with pytest.raises(TooFewVerticesError):
        insertion_tour(tiny, "nearest")
    with pytest.raises(ValueError):
        insertion_tour(rsp_instance(5, 1)[2], "bogus")
    with pytest.raises(ValueError):
        insertion_tour(rsp_instance(5, 1)[2], "random", None)


# -- two-opt ------------------------------------------------------------------


def test_two_opt_fixes_crossed_line_tour(line_metric):
    trace = two_opt(line_metric, (1, 3, 2, 4))
    assert trace.costs[0] == pytest.approx(10.8, rel=1e-12)
    assert trace.final.cost == pytest.approx(9.0, rel=1e-12)
    assert trace.iterations == 1


def test_two_opt_leaves_optimum_alone():
    _, _, m = rsp_instance(8, seed=13)
    best = exact_tsp(m)
    trace = two_opt(m, best)
    assert trace.iterations == 0
    assert trace.final.order == best.order


def test_two_opt_invariants_on_random_instances():
    for seed in range(12):
        _, _, m = rsp_instance(11, seed=seed + 500)
        trace = two_opt(m)
        assert all(b < a for a, b in zip(trace.costs, trace.costs[1:]))
        assert not has_improving_exchange(m, trace.final)
        assert trace.final.cost <= trace.costs[0] + 1e-12
        assert trace.final.cost >= exact_tsp(m).cost - 1e-12
        assert sorted(trace.final.order) == list(range(1, 12))


def test_two_opt_best_improvement_pivot():
    for seed in (1, 2):
        _, _, m = rsp_instance(10, seed=seed)
        trace = two_opt(m, pivot="best")
        assert not has_improving_exchange(m, trace.final)
        assert all(b < a for a, b in zip(trace.costs, trace.costs[1:]))


def test_two_opt_validates_input(line_metric):
    with pytest.raises(ValueError):
        two_opt(line_metric, (1, 2, 3))
    with pytest.raises(ValueError):
        two_opt(line_metric, pivot="steepest")
    with pytest.raises(InfiniteDistanceError):
        two_opt(infinite_metric())


# -- exact TSP ----------------------------------------------------------------


def test_tsp_three_vertices_is_perimeter():
    _, _, m = rsp_instance(3, seed=2)
    want = m.d(1, 2) + m.d(2, 3) + m.d(1, 3)
    assert exact_tsp(m).cost == pytest.approx(want, rel=1e-12)


def test_tsp_line_example(line_metric):
    got = exact_tsp(line_metric)
    assert got.cost == pytest.approx(9.0, rel=1e-12)
    assert tour_cost(line_metric, got.order) == pytest.approx(got.cost, rel=1e-12)


def test_tsp_agrees_with_permutation_enumeration():
    for n in (3, 5, 6, 8):
        for seed in range(5):
            _, _, m = rsp_instance(n, seed=seed * 13 + n)
            assert exact_tsp(m).cost == pytest.approx(min_tsp_brute(m.dist), abs=1e-12)


def test_tsp_errors(line_metric):
    with pytest.raises(TooFewVerticesError):
        exact_tsp(Metric.from_matrix([[0.0, 1.0], [1.0, 0.0]]))
    with pytest.raises(SizeCapExceededError):
        exact_tsp(line_metric, cap=3)
    with pytest.raises(InfiniteDistanceError):
        exact_tsp(infinite_metric())


# -- k-median -----------------------------------------------------------------


def test_all_vertices_as_centers_cost_zero():
    _, _, m = rsp_instance(6, seed=44)
    assert trivial_kmedian(m, tuple(range(1, 7))).cost == 0.0
    assert exact_kmedian(m, 6).cost == 0.0


def test_kmedian_line_examples(line_metric):
    assert trivial_kmedian(line_metric, (1,)).cost == pytest.approx(7.6, rel=1e-12)
    best = exact_kmedian(line_metric, 1)
    assert best.cost == pytest.approx(5.4, rel=1e-12)
    assert best.centers in ((2,), (3,))  # both attain 5.4; ties go to the first


def test_kmedian_with_n_minus_one_centers():
    _, _, m = rsp_instance(7, seed=9)
    got = exact_kmedian(m, 6)
    nearest = [min(m.d(v, u) for u in range(1, 8) if u != v) for v in range(1, 8)]
    assert got.cost == pytest.approx(min(nearest), rel=1e-12)


def test_trivial_never_beats_optimal():
    for seed in range(8):
        _, _, m = rsp_instance(9, seed=seed + 29)
        for k in (1, 2, 4):
            tr = trivial_kmedian(m, first_k_centers(k)).cost
            me = exact_kmedian(m, k).cost
            assert tr >= me - 1e-12


def test_kmedian_errors(line_metric):
    with pytest.raises(EmptyCenterSetError):
        trivial_kmedian(line_metric, ())
    with pytest.raises(ValueError):
        trivial_kmedian(line_metric, (0,))
    with pytest.raises(ValueError):
        exact_kmedian(line_metric, 0)
    with pytest.raises(SizeCapExceededError):
        exact_kmedian(rsp_instance(12, 1)[2], 6, cap=100)
    with pytest.raises(InfiniteDistanceError):
        trivial_kmedian(infinite_metric(), (1,))


def test_first_k_centers():
    assert first_k_centers(3) == (1, 2, 3)
