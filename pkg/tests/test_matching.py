"""Min-cost-flow matching engine against exhaustive enumeration."""

import itertools
import random

import pytest

from feedalloc.matching import (COST_EPS, FlowNetwork, NegativeCycleError,
                                constrained_max_weight_matching,
                                max_weight_matching, min_cost_flow)


def _best_matching_weight(edges, k=None):
    """Exhaustive oracle: best total weight of a matching of size <= k."""
    best = 0.0
    max_size = len(edges) if k is None else min(k, len(edges))
    for size in range(1, max_size + 1):
        for combo in itertools.combinations(edges, size):
            ads = [i for i, _, _ in combo]
            slots = [j for _, j, _ in combo]
            if len(set(ads)) < size or len(set(slots)) < size:
                continue
            best = max(best, sum(w for _, _, w in combo))
    return best


def _random_edges(rng, n_max=5, m_max=5, p=0.6):
    edges = []
    for i in range(1, rng.randint(1, n_max) + 1):
        for j in range(1, rng.randint(1, m_max) + 1):
            if rng.random() < p:
                edges.append((i, j, round(rng.uniform(0.0, 10.0), 3)))
    return edges


def test_max_weight_matching_equals_enumeration():
    rng = random.Random(31)
    for _ in range(100):
        edges = _random_edges(rng)
        if len(edges) > 12:
            continue
        pairs, weight = max_weight_matching(edges)
        assert weight == pytest.approx(_best_matching_weight(edges), abs=1e-9)
        # result is itself a matching over instance edges
        assert len({i for i, _ in pairs}) == len(pairs)
        assert len({j for _, j in pairs}) == len(pairs)
        edge_set = {(i, j) for i, j, _ in edges}
        assert all(p in edge_set for p in pairs)


def test_constrained_matching_equals_enumeration():
    rng = random.Random(32)
    for _ in range(100):
        edges = _random_edges(rng)
        if len(edges) > 12:
            continue
        for k in (0, 1, 2, 3):
            pairs, weight = constrained_max_weight_matching(edges, k)
            assert len(pairs) <= k
            assert weight == pytest.approx(_best_matching_weight(edges, k),
                                           abs=1e-9)


def test_zero_weight_edges_are_not_forced():
    pairs, weight = max_weight_matching([(1, 1, 0.0), (2, 2, 0.0)])
    assert pairs == [] and weight == 0.0


def test_empty_edge_list():
    assert max_weight_matching([]) == ([], 0.0)
    assert constrained_max_weight_matching([], 3) == ([], 0.0)


def test_rejects_bad_weights():
    with pytest.raises(ValueError):
        constrained_max_weight_matching([(1, 1, -1.0)], 1)
    with pytest.raises(ValueError):
        constrained_max_weight_matching([(1, 1, float("nan"))], 1)


def test_min_cost_flow_simple_network():
    # two parallel routes 0 -> 3; the cheap one saturates first
    net = FlowNetwork(num_nodes=4, source=0, sink=3)
    net.add_arc(0, 1, 2, 1.0)
    net.add_arc(1, 3, 2, 1.0)
    net.add_arc(0, 2, 2, 3.0)
    net.add_arc(2, 3, 2, 3.0)
    res = min_cost_flow(net, demand=3)
    assert res.flow_value == 3 and res.met_demand
    assert res.cost == pytest.approx(2 * 2.0 + 1 * 6.0)
    assert res.flows == [2, 2, 1, 1]


def test_min_cost_flow_short_demand():
    net = FlowNetwork(num_nodes=3, source=0, sink=2)
    net.add_arc(0, 1, 1, 1.0)
    net.add_arc(1, 2, 1, 1.0)
    res = min_cost_flow(net, demand=5)
    assert res.flow_value == 1 and not res.met_demand


def test_min_cost_flow_handles_negative_costs():
    net = FlowNetwork(num_nodes=4, source=0, sink=3)
    net.add_arc(0, 1, 1, -5.0)
    net.add_arc(1, 3, 1, 0.0)
    net.add_arc(0, 2, 1, 1.0)
    net.add_arc(2, 3, 1, 1.0)
    res = min_cost_flow(net, demand=2)
    assert res.cost == pytest.approx(-5.0 + 2.0)


def test_negative_cycle_is_detected():
    net = FlowNetwork(num_nodes=4, source=0, sink=3)
    net.add_arc(0, 1, 1, 1.0)
    net.add_arc(1, 2, 1, -3.0)
    net.add_arc(2, 1, 1, 1.0)
    net.add_arc(2, 3, 1, 1.0)
    with pytest.raises(NegativeCycleError):
        min_cost_flow(net, demand=1)


def test_network_rejects_bad_arcs():
    net = FlowNetwork(num_nodes=3, source=0, sink=2)
    with pytest.raises(ValueError):
        net.add_arc(1, 1, 1, 0.0)
    with pytest.raises(ValueError):
        net.add_arc(0, 1, -1, 0.0)


def test_stop_at_nonnegative_cost_matches_matching_rule():
    # one profitable pair and one zero pair: only the profitable one is taken
    pairs, weight = constrained_max_weight_matching(
        [(1, 1, 4.0), (2, 2, 0.0)], k=2)
    assert pairs == [(1, 1)] and weight == pytest.approx(4.0)
