"""Exact max-weight bipartite matching via min-cost flow.

Self-contained successive-shortest-path solver with node potentials.
Costs are real-valued; reduced costs are kept non-negative up to a 1e-12
tolerance.  Ties between equal-cost augmenting paths break towards the
lowest node index (heap entries are (distance, node)).
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

COST_EPS = 1e-12


@dataclass
class FlowNetwork:
    """Directed network; arcs are (from, to, capacity, cost)."""

    num_nodes: int
    source: int
    sink: int
    arcs: list = field(default_factory=list)

    def add_arc(self, u, v, cap, cost):
        if u == v:
            raise ValueError("self-loop arc %d -> %d" % (u, v))
        if cap < 0:
            raise ValueError("negative capacity on arc %d -> %d" % (u, v))
        self.arcs.append((u, v, int(cap), float(cost)))


@dataclass
class FlowResult:
    flows: list          # flow per input arc, same order
    cost: float
    flow_value: int
    met_demand: bool


class NegativeCycleError(ValueError):
    pass


def min_cost_flow(net, demand, stop_at_nonnegative_cost=False):
    """Integral min-cost flow of value min(demand, maxflow).

    Successive shortest paths: initial potentials come from Bellman-Ford
    (input arcs may have negative cost but must not form a negative cycle),
    after which Dijkstra on reduced costs finds each augmenting path.  With
    ``stop_at_nonnegative_cost`` augmentation also stops once the cheapest
    path cost is >= -COST_EPS, which is the matching stopping rule.
    """
    n = net.num_nodes
    if not (0 <= net.source < n and 0 <= net.sink < n) or net.source == net.sink:
        raise ValueError("bad source/sink")
    # residual arcs: [to, cap, cost, index of reverse]
    graph = [[] for _ in range(n)]
    for (u, v, cap, cost) in net.arcs:
        graph[u].append([v, cap, cost, len(graph[v])])
        graph[v].append([u, 0, -cost, len(graph[u]) - 1])

    pot = _bellman_ford(graph, n, net.source)

    flow = 0
    total_cost = 0.0
    INF = math.inf
    while flow < demand:
        dist = [INF] * n
        dist[net.source] = 0.0
        prev = [None] * n          # (node, arc index)
        heap = [(0.0, net.source)]
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist[u] + COST_EPS:
                continue
            if pot[u] == INF:
                continue
            for idx, (v, cap, cost, _rev) in enumerate(graph[u]):
                if cap <= 0 or pot[v] == INF:
                    continue
                # reduced cost; tiny negatives are numerical noise
                rc = cost + pot[u] - pot[v]
                nd = d + (rc if rc > 0.0 else 0.0)
                if nd < dist[v] - COST_EPS:
                    dist[v] = nd
                    prev[v] = (u, idx)
                    heapq.heappush(heap, (nd, v))
        if dist[net.sink] == INF:
            break
        # true path cost under original costs
        path_cost = dist[net.sink] + pot[net.sink] - pot[net.source]
        if stop_at_nonnegative_cost and path_cost >= -COST_EPS:
            break
        for v in range(n):
            if dist[v] < INF:
                pot[v] += dist[v]
        # bottleneck along the path
        push = demand - flow
        v = net.sink
        while v != net.source:
            u, idx = prev[v]
            push = min(push, graph[u][idx][1])
            v = u
        v = net.sink
        while v != net.source:
            u, idx = prev[v]
            arc = graph[u][idx]
            arc[1] -= push
            graph[v][arc[3]][1] += push
            v = u
        flow += push
        total_cost += push * path_cost
    flows = _extract_flows(net, graph)
    return FlowResult(flows=flows, cost=total_cost, flow_value=flow,
                      met_demand=flow >= demand)


def _extract_flows(net, graph):
    """Per-arc flow = capacity minus remaining residual.  Residual lists were
    built by appending, per input arc, first the forward arc to graph[u] and
    then its reverse to graph[v]; replay that order to locate each arc."""
    counts = [0] * net.num_nodes
    flows = []
    for (u, v, cap, cost) in net.arcs:
        pos_u = counts[u]
        counts[u] += 1
        counts[v] += 1
        flows.append(cap - graph[u][pos_u][1])
    return flows


def _bellman_ford(graph, n, source):
    """Shortest distances allowing negative arcs; raises on negative cycles.
    Early exit makes this cheap on the layered DAGs built here."""
    INF = math.inf
    dist = [INF] * n
    dist[source] = 0.0
    for it in range(n + 1):
        changed = False
        for u in range(n):
            du = dist[u]
            if du == INF:
                continue
            for (v, cap, cost, _rev) in graph[u]:
                if cap > 0 and du + cost < dist[v] - COST_EPS:
                    dist[v] = du + cost
                    changed = True
        if not changed:
            break
        if it == n:
            raise NegativeCycleError("negative-cost cycle in input network")
    # unreachable nodes keep INF potentials; Dijkstra skips them
    return dist


def constrained_max_weight_matching(edges, k, n=None, m=None):
    """Maximum-weight matching of size <= k over (ad, slot, weight) triples.

    One flow augmentation adds one matched pair; augmentation stops after k
    pairs or when the best augmenting path no longer has positive weight, so
    zero-weight edges are never forced into the matching.
    Returns (list of (ad, slot), total weight).
    """
    edges = [(int(i), int(j), float(w)) for i, j, w in edges]
    for i, j, w in edges:
        if not (w >= 0.0 and math.isfinite(w)):
            raise ValueError("weight of edge (%d, %d) must be finite and >= 0" % (i, j))
    if k <= 0 or not edges:
        return [], 0.0
    ads = sorted({i for i, _, _ in edges})
    slots = sorted({j for _, j, _ in edges})
    ad_node = {a: 1 + idx for idx, a in enumerate(ads)}
    slot_node = {s: 1 + len(ads) + idx for idx, s in enumerate(slots)}
    num_nodes = 2 + len(ads) + len(slots)
    source, sink = 0, num_nodes - 1
    net = FlowNetwork(num_nodes=num_nodes, source=source, sink=sink)
    for a in ads:
        net.add_arc(source, ad_node[a], 1, 0.0)
    edge_arc_start = len(net.arcs)
    for i, j, w in edges:
        net.add_arc(ad_node[i], slot_node[j], 1, -w)
    for s in slots:
        net.add_arc(slot_node[s], sink, 1, 0.0)
    res = min_cost_flow(net, demand=min(k, len(ads), len(slots)),
                        stop_at_nonnegative_cost=True)
    matching = []
    total = 0.0
    for (i, j, w), f in zip(edges, res.flows[edge_arc_start:edge_arc_start + len(edges)]):
        if f > 0:
            matching.append((i, j))
            total += w
    matching.sort()
    return matching, total


def max_weight_matching(edges, n=None, m=None):
    """Maximum-weight matching over (ad, slot, weight) triples (no size cap).
    Returns (list of (ad, slot), total weight)."""
    if not edges:
        return [], 0.0
    edges = list(edges)
    return constrained_max_weight_matching(edges, k=len(edges))
