"""Noise estimation and BIC-based penalty selection.

The noise proxy is the mean squared difference of signal values along the
n-1 adjacent pairs of a spanning path (snake order on grids) or, on general
graphs, the edges of a DFS spanning tree.  On pure iid noise each difference
has variance 2 sigma^2, so the estimator targets 2 sigma^2; it is used
unadjusted by default and ``correct_bias=True`` halves it.

The BIC score of a fit is  rss + sigma2_hat * v * log(n)  where v counts the
connected components induced by the fitted signal on the graph (equal-valued
but disconnected regions count separately).
"""

from __future__ import annotations

import dataclasses
import math
from typing import Sequence

import numpy as np

from .graph import (
    DisconnectedGraphError,
    Graph,
    as_signal,
    connected_pieces,
    grid_graph,
)
from .potts import SolverConfig, potts_two_piece
from .recursive import recursive_fit
from .resistance import resolve_weights

__all__ = [
    "spanning_path_order",
    "estimate_sigma2",
    "bic_score",
    "select_lambda",
    "theoretical_lambda",
]


def _snake_pairs(side: int) -> list[tuple[int, int]]:
    """Boustrophedon order over a side x side grid as adjacent node pairs."""
    seq: list[int] = []
    for i in range(1, side + 1):
        cols = range(1, side + 1) if i % 2 == 1 else range(side, 0, -1)
        seq.extend((i - 1) * side + j for j in cols)
    return list(zip(seq, seq[1:]))


def spanning_path_order(g: Graph) -> list[tuple[int, int]]:
    """Adjacent node pairs of a spanning walk: the snake order when g is a
    square grid, otherwise the edges of a DFS spanning tree from node 1
    (neighbors visited in ascending order).  Every returned pair is an edge
    of g, and there are exactly n - 1 pairs."""
    n = g.node_count
    if n == 1:
        return []
    side = math.isqrt(n)
    if side * side == n and g.edge_keys == grid_graph(side).edge_keys:
        return _snake_pairs(side)
    if not g.is_connected:
        raise DisconnectedGraphError(
            "a spanning path needs a connected graph"
        )
    pairs: list[tuple[int, int]] = []
    seen = [False] * (n + 1)
    seen[1] = True
    stack: list[tuple[int, int]] = [(1, 0)]
    while stack:
        u, k = stack.pop()
        nbrs = g.neighbors[u - 1]
        while k < len(nbrs) and seen[nbrs[k]]:
            k += 1
        if k < len(nbrs):
            v = nbrs[k]
            stack.append((u, k + 1))
            seen[v] = True
            pairs.append((u, v))
            stack.append((v, 0))
    return pairs


def estimate_sigma2(
    Y: Sequence[float] | np.ndarray,
    order: Sequence[tuple[int, int]] | Sequence[int],
    *,
    correct_bias: bool = False,
) -> float:
    """Mean squared adjacent difference along a path or pair list.

    ``order`` is either a node sequence (consecutive entries are the pairs)
    or an explicit list of node pairs, 1-based either way.  On pure noise
    the uncorrected value estimates 2 sigma^2.
    """
    Y = np.asarray(Y, dtype=np.float64)
    order = list(order)
    if order and not np.isscalar(order[0]):
        pairs = [(int(a), int(b)) for a, b in order]
    else:
        seq = [int(v) for v in order]
        pairs = list(zip(seq, seq[1:]))
    if not pairs:
        raise ValueError("need at least one adjacent pair to estimate noise")
    a = np.asarray([p[0] for p in pairs], dtype=np.int64) - 1
    b = np.asarray([p[1] for p in pairs], dtype=np.int64) - 1
    out = float(np.mean((Y[a] - Y[b]) ** 2))
    return out / 2.0 if correct_bias else out


def bic_score(
    Y: Sequence[float] | np.ndarray,
    mu: Sequence[float] | np.ndarray,
    g: Graph,
    sigma2: float,
) -> float:
    """rss + sigma2 * pieces * log(n), pieces = connected components induced
    by mu on g."""
    Y = as_signal(g, Y)
    mu = as_signal(g, mu)
    rss = float(np.sum((Y - mu) ** 2))
    return rss + sigma2 * connected_pieces(g, mu) * math.log(g.node_count)


def theoretical_lambda(
    g: Graph,
    sigma2: float,
    *,
    weights: Sequence[float] | np.ndarray | None = None,
    c: float = 1.0,
) -> float:
    """Penalty preset  c * sigma2 * log(total edge weight).

    The constant c is not pinned down by theory; callers pick it.  With unit
    weights the total is just the edge count.
    """
    if sigma2 < 0:
        raise ValueError(f"sigma2 must be nonnegative, got {sigma2}")
    if weights is None:
        total = float(len(g.edges))
    else:
        w = np.asarray(weights, dtype=np.float64)
        if w.shape != (len(g.edges),):
            raise ValueError(
                f"expected {len(g.edges)} edge weights, got shape {w.shape}"
            )
        total = float(np.sum(w))
    if total <= 1.0:
        raise ValueError(
            f"total edge weight must exceed 1 for a positive penalty, "
            f"got {total}"
        )
    return c * sigma2 * math.log(total)


def select_lambda(
    g: Graph,
    Y: Sequence[float] | np.ndarray,
    lambdas: Sequence[float],
    cfg: SolverConfig,
    *,
    solver: str = "two_piece",
    sigma2: float | None = None,
) -> tuple[float, np.ndarray]:
    """Fit once per candidate penalty and keep the BIC minimizer.

    Returns (best lambda, its fitted signal); ties go to the smaller lambda.
    cfg supplies delta, tau, and the weighting; its lam field is ignored.
    The weighting is resolved once and shared across candidates.
    """
    if solver not in ("two_piece", "recursive"):
        raise ValueError(
            f"solver must be 'two_piece' or 'recursive', got {solver!r}"
        )
    Y = as_signal(g, Y)
    if sigma2 is None:
        sigma2 = estimate_sigma2(Y, spanning_path_order(g))
    w = resolve_weights(g, cfg.weighting)

    best: tuple[float, float, np.ndarray] | None = None
    for lam in sorted(float(v) for v in lambdas):
        run_cfg = dataclasses.replace(cfg, lam=lam)
        if solver == "two_piece":
            mu = potts_two_piece(g, Y, run_cfg, weights=w)
        else:
            _, mu = recursive_fit(g, Y, run_cfg, weights=w)
        score = bic_score(Y, mu, g, sigma2)
        if best is None or score < best[0]:
            best = (score, lam, mu)
    if best is None:
        raise ValueError("lambda grid is empty")
    return best[1], best[2]
