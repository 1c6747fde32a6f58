"""Pure-Python Dinic kernel.

This is the fallback twin of the compiled module ``_maxflow_core``; the two
are kept line for line in step so that arc slots, traversal order, and hence
the returned cut are identical whichever one is loaded.  Arcs are stored as
paired slots in a CSR layout: input arc k becomes a forward slot at its tail
and a zero-capacity reverse slot at its head, claimed in input order, so each
node scans its incident slots in the order the arcs were given.

Capacities may be +inf; residual arithmetic is safe because inf - x == inf
for finite x.  Callers are expected to reject networks whose minimum cut is
infinite before invoking the kernel; an infinite bottleneck here raises
OverflowError as a backstop.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["max_flow_min_cut"]


def max_flow_min_cut(
    n: int,
    tails: np.ndarray,
    heads: np.ndarray,
    caps: np.ndarray,
    source: int,
    sink: int,
) -> tuple[float, np.ndarray]:
    """Max flow / min cut on n nodes.  Returns (flow_value, side) where side
    is a uint8 mask of the nodes residual-reachable from the source."""
    m = len(tails)
    tails_l = [int(v) for v in tails]
    heads_l = [int(v) for v in heads]
    caps_l = [float(v) for v in caps]

    # CSR slot layout: two slots per input arc, claimed in input order.
    deg = [0] * n
    for k in range(m):
        deg[tails_l[k]] += 1
        deg[heads_l[k]] += 1
    start = [0] * (n + 1)
    for u in range(n):
        start[u + 1] = start[u] + deg[u]
    ptr = start[:n].copy()
    to = [0] * (2 * m)
    frm = [0] * (2 * m)
    cap = [0.0] * (2 * m)
    rev = [0] * (2 * m)
    for k in range(m):
        u, v = tails_l[k], heads_l[k]
        a = ptr[u]
        ptr[u] += 1
        b = ptr[v]
        ptr[v] += 1
        to[a], frm[a], cap[a], rev[a] = v, u, caps_l[k], b
        to[b], frm[b], cap[b], rev[b] = u, v, 0.0, a

    level = [-1] * n
    queue = [0] * n

    def bfs() -> bool:
        for u in range(n):
            level[u] = -1
        level[source] = 0
        queue[0] = source
        head, tail = 0, 1
        while head < tail:
            u = queue[head]
            head += 1
            for e in range(start[u], start[u + 1]):
                v = to[e]
                if cap[e] > 0.0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue[tail] = v
                    tail += 1
        return level[sink] >= 0

    it = [0] * n
    path = [0] * n

    def augment() -> float:
        u = source
        depth = 0
        while True:
            if u == sink:
                f = math.inf
                for p in range(depth):
                    if cap[path[p]] < f:
                        f = cap[path[p]]
                for p in range(depth):
                    e = path[p]
                    cap[e] -= f
                    cap[rev[e]] += f
                return f
            e = it[u]
            stop = start[u + 1]
            while e < stop:
                if cap[e] > 0.0 and level[to[e]] == level[u] + 1:
                    break
                e += 1
            it[u] = e
            if e < stop:
                path[depth] = e
                depth += 1
                u = to[e]
            else:
                level[u] = -1
                if u == source:
                    return 0.0
                depth -= 1
                e = path[depth]
                u = frm[e]
                it[u] += 1

    total = 0.0
    while bfs():
        for u in range(n):
            it[u] = start[u]
        while True:
            f = augment()
            if f <= 0.0:
                break
            if math.isinf(f):
                raise OverflowError("augmenting path with infinite capacity")
            total += f

    # Canonical cut side: residual reachability from the source.
    side = np.zeros(n, dtype=np.uint8)
    side[source] = 1
    queue[0] = source
    head, tail = 0, 1
    while head < tail:
        u = queue[head]
        head += 1
        for e in range(start[u], start[u + 1]):
            v = to[e]
            if cap[e] > 0.0 and not side[v]:
                side[v] = 1
                queue[tail] = v
                tail += 1
    return total, side
