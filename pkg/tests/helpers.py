"""Brute-force oracles shared across the test suite.

Everything here trades speed for being obviously correct at small sizes:
spanning trees by enumeration over edge subsets, minimum cuts by enumeration
over source sides, expansion moves by enumeration over adopter subsets.
Instances fed to these oracles keep all values dyadic (multiples of a power
of two at small magnitude) so float arithmetic is exact and equality checks
need no tolerance.
"""

from __future__ import annotations

import itertools

import numpy as np

from pottscut import FlowNetwork, Graph, build_graph, objective


def random_connected_graph(
    rng: np.random.Generator, max_nodes: int = 8, max_edges: int = 14
) -> Graph:
    """Random spanning tree plus extra edges, m <= max_edges so the
    combinations-based tree oracle stays fast."""
    n = int(rng.integers(2, max_nodes + 1))
    perm = [int(v) for v in rng.permutation(n) + 1]
    edges = set()
    for k in range(1, n):
        a = perm[int(rng.integers(0, k))]
        b = perm[k]
        edges.add((min(a, b), max(a, b)))
    pool = [
        (i, j)
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        if (i, j) not in edges
    ]
    rng.shuffle(pool)
    room = min(len(pool), max_edges - len(edges))
    extra = int(rng.integers(0, room + 1)) if room > 0 else 0
    edges.update(pool[:extra])
    ordered = sorted(edges)
    order = [int(k) for k in rng.permutation(len(ordered))]
    return build_graph(n, [ordered[k] for k in order])


def _acyclic_spanning(n: int, edge_subset) -> bool:
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in edge_subset:
        ri, rj = find(i), find(j)
        if ri == rj:
            return False
        parent[ri] = rj
    return True


def enumerate_spanning_trees(g: Graph) -> tuple[int, list[int]]:
    """(total spanning trees, per-edge containment counts) by checking every
    (n-1)-subset of the edge list."""
    n = g.node_count
    total = 0
    per_edge = [0] * g.edge_count
    for subset in itertools.combinations(range(g.edge_count), n - 1):
        if _acyclic_spanning(n, [g.edges[k] for k in subset]):
            total += 1
            for k in subset:
                per_edge[k] += 1
    return total, per_edge


def exhaustive_min_cut(net: FlowNetwork) -> tuple[float, list[frozenset[int]]]:
    """(minimum cut value, every achieving source side) by enumerating all
    2^k placements of the non-terminal nodes.  Sides include the source."""
    free = [
        v for v in range(net.node_count) if v not in (net.source, net.sink)
    ]
    arcs = net.arcs()
    best = float("inf")
    achieving: list[frozenset[int]] = []
    for bits in range(1 << len(free)):
        side = {net.source}
        side.update(v for k, v in enumerate(free) if bits >> k & 1)
        value = 0.0
        for tail, head, cap in arcs:
            if tail in side and head not in side:
                value += cap
        if value < best:
            best = value
            achieving = [frozenset(side)]
        elif value == best:
            achieving.append(frozenset(side))
    return best, achieving


def minimal_min_cut_side(net: FlowNetwork) -> tuple[float, frozenset[int]]:
    """The unique inclusion-minimal minimum-cut source side (the
    intersection of all achieving sides)."""
    best, achieving = exhaustive_min_cut(net)
    side = frozenset.intersection(*achieving)
    assert side in achieving, "min-cut sides must be closed under intersection"
    return best, side


def best_expansion_objective(
    mu, Y, g: Graph, lam: float, w, c: float
) -> float:
    """Minimum objective over every expansion of mu at level c: nodes already
    at c are fixed, each remaining node keeps its value or adopts c."""
    mu = np.asarray(mu, dtype=np.float64)
    free = [k for k in range(mu.size) if mu[k] != c]
    best = np.inf
    for bits in range(1 << len(free)):
        cand = mu.copy()
        for p, k in enumerate(free):
            if bits >> p & 1:
                cand[k] = c
        val = objective(Y, cand, g, w, lam)
        if val < best:
            best = val
    return float(best)


def dyadic(rng: np.random.Generator, size, lo=-8, hi=8, denom=4) -> np.ndarray:
    """Array of random multiples of 1/denom in [lo, hi]; denom must be a
    power of two so all arithmetic downstream stays exact."""
    k = rng.integers(lo * denom, hi * denom + 1, size=size)
    return np.asarray(k, dtype=np.float64) / denom
