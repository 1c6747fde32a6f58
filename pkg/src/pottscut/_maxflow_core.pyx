# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled Dinic kernel; the line-for-line twin of ``_maxflow_py``.

Slot layout, traversal order, and float operation order match the Python
fallback exactly, so both backends return identical flows and cut sides.
"""

from libc.math cimport INFINITY, isinf

import numpy as np


def max_flow_min_cut(
    Py_ssize_t n,
    tails,
    heads,
    caps,
    Py_ssize_t source,
    Py_ssize_t sink,
):
    """Max flow / min cut on n nodes.  Returns (flow_value, side) where side
    is a uint8 mask of the nodes residual-reachable from the source."""
    cdef const long long[::1] tails_v = np.ascontiguousarray(tails, dtype=np.int64)
    cdef const long long[::1] heads_v = np.ascontiguousarray(heads, dtype=np.int64)
    cdef const double[::1] caps_v = np.ascontiguousarray(caps, dtype=np.float64)
    cdef Py_ssize_t m = tails_v.shape[0]

    cdef long long[::1] deg = np.zeros(n, dtype=np.int64)
    cdef long long[::1] start = np.zeros(n + 1, dtype=np.int64)
    cdef long long[::1] ptr = np.zeros(n, dtype=np.int64)
    cdef long long[::1] to = np.zeros(2 * m, dtype=np.int64)
    cdef long long[::1] frm = np.zeros(2 * m, dtype=np.int64)
    cdef long long[::1] rev = np.zeros(2 * m, dtype=np.int64)
    cdef double[::1] cap = np.zeros(2 * m, dtype=np.float64)
    cdef long long[::1] level = np.zeros(n, dtype=np.int64)
    cdef long long[::1] queue = np.zeros(n, dtype=np.int64)
    cdef long long[::1] it = np.zeros(n, dtype=np.int64)
    cdef long long[::1] path = np.zeros(n, dtype=np.int64)

    cdef Py_ssize_t k, u, v, a, b, e, stop, head, tail, depth, p
    cdef double f, total

    # CSR slot layout: two slots per input arc, claimed in input order.
    for k in range(m):
        deg[tails_v[k]] += 1
        deg[heads_v[k]] += 1
    for u in range(n):
        start[u + 1] = start[u] + deg[u]
        ptr[u] = start[u]
    for k in range(m):
        u = tails_v[k]
        v = heads_v[k]
        a = ptr[u]
        ptr[u] += 1
        b = ptr[v]
        ptr[v] += 1
        to[a] = v
        frm[a] = u
        cap[a] = caps_v[k]
        rev[a] = b
        to[b] = u
        frm[b] = v
        cap[b] = 0.0
        rev[b] = a

    total = 0.0
    while True:
        # BFS level graph.
        for u in range(n):
            level[u] = -1
        level[source] = 0
        queue[0] = source
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            for e in range(start[u], start[u + 1]):
                v = to[e]
                if cap[e] > 0.0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue[tail] = v
                    tail += 1
        if level[sink] < 0:
            break
        for u in range(n):
            it[u] = start[u]
        # Blocking flow: advance/retreat with current-arc pointers.
        while True:
            u = source
            depth = 0
            f = -1.0
            while True:
                if u == sink:
                    f = INFINITY
                    for p in range(depth):
                        if cap[path[p]] < f:
                            f = cap[path[p]]
                    for p in range(depth):
                        e = path[p]
                        cap[e] -= f
                        cap[rev[e]] += f
                    break
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
                        f = 0.0
                        break
                    depth -= 1
                    e = path[depth]
                    u = frm[e]
                    it[u] += 1
            if f <= 0.0:
                break
            if isinf(f):
                raise OverflowError("augmenting path with infinite capacity")
            total += f

    # Canonical cut side: residual reachability from the source.
    side = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] side_v = side
    side_v[source] = 1
    queue[0] = source
    head = 0
    tail = 1
    while head < tail:
        u = queue[head]
        head += 1
        for e in range(start[u], start[u + 1]):
            v = to[e]
            if cap[e] > 0.0 and side_v[v] == 0:
                side_v[v] = 1
                queue[tail] = v
                tail += 1
    return total, side
