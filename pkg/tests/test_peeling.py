import math
import random

import pytest

from dualdense import (ExhaustedError, GraphError, WeightedGraph, greedy_densest, peel_sequence,
                       v_greedy, v_greedy_ranked)
from dualdense.peeling import GREEDY, V_GREEDY, best_component

from conftest import brute_density, brute_max_density, clique_edges, random_weighted

PATH = WeightedGraph.from_edges([(0, 1, 1.0), (1, 2, 1.0)])


def two_cliques(bridge_w):
    edges = clique_edges(range(5)) + clique_edges(range(5, 10)) + [(4, 5, bridge_w)]
    return WeightedGraph.from_edges(edges)


def test_single_node():
    g = WeightedGraph.from_edges([], nodes=[3])
    seq = peel_sequence(g)
    assert len(seq) == 1 and seq.densities == [0.0]
    c = v_greedy(g)
    assert c.nodes == {3} and c.score == 0


def test_path_trace():
    seq = peel_sequence(PATH)
    assert seq.order == [0, 1, 2]
    assert seq.densities == pytest.approx([4 / 3, 1.0, 0.0])
    assert [seq.nodes_at(i) for i in (1, 2, 3)] == [{0, 1, 2}, {1, 2}, {2}]


def test_star_center_survives_first_removal():
    g = WeightedGraph.from_edges([(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)])
    assert peel_sequence(g).order[0] != 0


def test_empty_graph_errors():
    g = WeightedGraph.from_edges([])
    for fn in (peel_sequence, greedy_densest, v_greedy):
        with pytest.raises(GraphError):
            fn(g)


def test_greedy_examples():
    c = greedy_densest(PATH)
    assert c.nodes == {0, 1, 2} and c.rho == pytest.approx(4 / 3)
    g = WeightedGraph.from_edges(clique_edges(range(5)) + [(4, 5, 1.0)])
    c = greedy_densest(g)
    assert c.nodes == set(range(5)) and c.rho == pytest.approx(4.0)
    k7 = WeightedGraph.from_edges(clique_edges(range(7), 0.3))
    assert greedy_densest(k7).nodes == set(range(7))


def test_v_greedy_path_scores():
    c = v_greedy(PATH)
    assert c.nodes == {0, 1, 2}
    assert c.score == pytest.approx(4 / 3 + 8 / 9)
    seq = peel_sequence(PATH)
    assert seq.scores(V_GREEDY)[1] == pytest.approx(2.0)


def test_v_greedy_prefers_lone_clique():
    g = two_cliques(1.0)
    seq = peel_sequence(g)
    assert seq.scores(V_GREEDY)[0] == pytest.approx(4.2 + 2 * 4.2 / 10)
    c = v_greedy(g)
    assert len(c.nodes) == 5 and c.score == pytest.approx(5.6)
    assert c.nodes in ({0, 1, 2, 3, 4}, {5, 6, 7, 8, 9})


def test_v_greedy_ranked():
    g = two_cliques(1.0)
    best = v_greedy(g)
    assert v_greedy_ranked(g, []) == best
    seq = peel_sequence(g)
    second_step = seq.ranked_steps(V_GREEDY)[1]
    second = v_greedy_ranked(g, [best.nodes])
    assert second.nodes == seq.nodes_at(second_step)
    assert second.score <= best.score


def test_v_greedy_ranked_exhaustion():
    g = WeightedGraph.from_edges([(0, 1, 1.0)])
    with pytest.raises(ExhaustedError):
        v_greedy_ranked(g, [{0, 1}, {1}])


def test_disconnected_winner_returns_best_component():
    # edgeless graph: every snapshot scores 0, the earliest (whole, disconnected) one wins
    g = WeightedGraph.from_edges([], nodes=[4, 2, 7])
    c = v_greedy(g)
    assert c.nodes == {2} and c.step_index == 1


def test_best_component_picks_highest_score():
    edges = clique_edges(range(3), 1.0) + clique_edges(range(3, 6), 0.9)
    g = WeightedGraph.from_edges(edges)
    cand = peel_sequence(g).candidate(1)
    assert len(cand.nodes) == 6
    c = best_component(g, cand)
    assert c.nodes == {0, 1, 2}
    assert c.rho == pytest.approx(2.0) and c.score == pytest.approx(2.0 + 4.0 / 3)


def test_best_component_passthrough_for_connected():
    seq = peel_sequence(PATH)
    cand = seq.candidate(1)
    assert best_component(PATH, cand) is cand


def test_recorded_density_matches_recomputation(rng):
    for _ in range(40):
        g = random_weighted(rng, rng.randint(1, 25), rng.uniform(0.05, 0.6), zero_frac=0.1)
        seq = peel_sequence(g)
        n = g.num_nodes
        for step in range(1, n + 1):
            nodes = seq.nodes_at(step)
            assert len(nodes) == n - step + 1
            assert seq.densities[step - 1] == pytest.approx(brute_density(g, nodes), abs=1e-9)
            if step > 1:
                assert seq.nodes_at(step - 1) - nodes == {seq.order[step - 2]}


def test_removed_node_has_minimum_current_vol(rng):
    for _ in range(30):
        g = random_weighted(rng, rng.randint(2, 20), 0.3)
        seq = peel_sequence(g)
        for step in range(1, len(seq)):
            alive = seq.nodes_at(step)
            vols = {v: sum(w for u, w in g.neighbors(v).items() if u in alive) for v in alive}
            lo = min(vols.values())
            removed = seq.order[step - 1]
            assert vols[removed] == pytest.approx(lo, abs=1e-9)
            # tie -> lowest id among exact minima (with float slack)
            ties = [v for v, x in vols.items() if abs(x - lo) <= 1e-12]
            assert removed == min(ties) or len(ties) == 1


def test_determinism(rng):
    g = random_weighted(rng, 40, 0.2)
    a, b = peel_sequence(g), peel_sequence(g)
    assert a.order == b.order and a.densities == b.densities


def test_score_gap_formula(rng):
    for _ in range(20):
        g = random_weighted(rng, rng.randint(2, 15), 0.4)
        seq = peel_sequence(g)
        for rho, v, gr in zip(seq.densities, seq.scores(V_GREEDY), seq.scores(GREEDY)):
            assert gr == rho
        for step in range(1, len(seq) + 1):
            rho = seq.densities[step - 1]
            size = seq.size_at(step)
            gap = seq.scores(V_GREEDY)[step - 1] - rho
            assert gap == pytest.approx(2 * rho / size)
            if rho > 0:
                assert gap > 0


def test_heap_operation_budget(rng):
    for _ in range(20):
        n = rng.randint(1, 200)
        g = random_weighted(rng, n, rng.uniform(0.01, 0.3))
        seq = peel_sequence(g)
        m = g.num_edges
        assert seq.heap_pushes <= n + 2 * m
        assert seq.heap_pops <= seq.heap_pushes


def test_half_approximation_small(rng):
    for _ in range(30):
        g = random_weighted(rng, rng.randint(2, 9), rng.uniform(0.2, 0.9))
        opt = brute_max_density(g)
        assert greedy_densest(g).rho >= 0.5 * opt - 1e-12
