"""Edge weightings: uniform 0/1 and effective resistance.

The effective resistance of an edge equals the fraction of spanning trees
that contain it, so boundaries that few trees cross are cheap to cut.  It is
computed from the pseudoinverse of the graph Laplacian: for connected g the
matrix L + J/n is nonsingular and its inverse K satisfies
r(i, j) = K_ii + K_jj - 2 K_ij, because the rank-one J/n part cancels under
difference vectors.  Spanning-tree counts back this with an independent
route: the determinant of any Laplacian minor counts trees, and contracting
an edge counts the trees through it.  The determinant route is exponential
in value, not in time, but is only meant for small graphs (n up to a few
dozen); the weights route is the production path.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .graph import DisconnectedGraphError, Graph, GraphError

__all__ = [
    "unit_weights",
    "effective_resistance_weights",
    "spanning_tree_count",
    "spanning_tree_fraction",
    "resolve_weights",
]


def unit_weights(g: Graph) -> np.ndarray:
    """Weight 1.0 for every edge, in edge order."""
    return np.ones(g.edge_count, dtype=np.float64)


def effective_resistance_weights(g: Graph) -> np.ndarray:
    """Effective resistance per edge, in edge order.  Requires connected g."""
    if not g.is_connected:
        raise DisconnectedGraphError(
            "effective resistance requires a connected graph"
        )
    n = g.node_count
    if g.edge_count == 0:
        return np.zeros(0, dtype=np.float64)
    K = np.linalg.inv(g.laplacian() + 1.0 / n)
    ei, ej = g.edge_arrays
    return K[ei, ei] + K[ej, ej] - 2.0 * K[ei, ej]


def _tree_count_from_adjacency(adj: np.ndarray) -> int:
    """Spanning trees of the multigraph with integer adjacency counts adj.

    Uses the determinant of the Laplacian minor (row/col 0 removed), guarded
    to be within 1e-6 relative of an integer.
    """
    deg = adj.sum(axis=1)
    lap = np.diag(deg) - adj
    det = float(np.linalg.det(lap[1:, 1:]))
    count = round(det)
    if abs(det - count) > 1e-6 * max(1.0, abs(det)):
        raise ArithmeticError(
            f"spanning-tree determinant {det!r} is not near an integer"
        )
    return int(count)


def spanning_tree_count(g: Graph) -> int:
    """Number of spanning trees of g.  Requires connected g; determinant
    based, so meant for small graphs."""
    if not g.is_connected:
        raise DisconnectedGraphError(
            "spanning trees are counted for connected graphs only"
        )
    if g.node_count == 1:
        return 1
    n = g.node_count
    adj = np.zeros((n, n))
    ei, ej = g.edge_arrays
    adj[ei, ej] = 1.0
    adj[ej, ei] = 1.0
    return _tree_count_from_adjacency(adj)


def spanning_tree_fraction(g: Graph, edge: Sequence[int]) -> float:
    """Fraction of spanning trees of g containing the given edge.

    Trees through (i, j) biject with spanning trees of the contraction
    g/(i, j), which may be a multigraph; the contraction is carried out on
    the integer adjacency matrix so parallel edges keep their multiplicity.
    """
    i, j = int(edge[0]), int(edge[1])
    if not g.has_edge(i, j):
        raise GraphError(f"({i}, {j}) is not an edge of the graph")
    total = spanning_tree_count(g)
    n = g.node_count
    if n == 2:
        return 1.0
    adj = np.zeros((n, n))
    ei, ej = g.edge_arrays
    adj[ei, ej] = 1.0
    adj[ej, ei] = 1.0
    a, b = i - 1, j - 1
    adj[a, :] += adj[b, :]
    adj[:, a] += adj[:, b]
    adj[a, a] = 0.0
    keep = [k for k in range(n) if k != b]
    contracted = adj[np.ix_(keep, keep)]
    return _tree_count_from_adjacency(contracted) / total


def resolve_weights(
    g: Graph, weighting: str | Sequence[float] | np.ndarray
) -> np.ndarray:
    """Turn a weighting choice into a per-edge float array.

    Accepts the names "unit" and "resistance" or an explicit vector of
    nonnegative finite weights in edge order.
    """
    if isinstance(weighting, str):
        if weighting == "unit":
            return unit_weights(g)
        if weighting == "resistance":
            return effective_resistance_weights(g)
        raise ValueError(
            f"unknown weighting {weighting!r}; expected 'unit' or 'resistance'"
        )
    w = np.asarray(weighting, dtype=np.float64)
    if w.shape != (g.edge_count,):
        raise ValueError(
            f"weights has shape {w.shape}, expected ({g.edge_count},)"
        )
    if not np.all(np.isfinite(w)) or np.any(w < 0):
        raise ValueError("weights must be finite and >= 0")
    return w
