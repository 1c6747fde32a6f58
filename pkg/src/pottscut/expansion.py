"""Single-level expansion moves solved exactly as minimum s-t cuts.

An expansion at level c relabels each node to either keep its current value
mu_i or adopt c; nodes already at c must stay there.  The move minimizing

    F(mu~) = 1/2 * sum_i (Y_i - mu~_i)^2 + lam * sum_(i,j) w_ij * 1{mu~_i != mu~_j}

over all 2^n candidates is found with one min-cut on a small network: the
sink side of the cut is exactly the set of adopters, and with the symmetric
capacity convention the cut value equals F of the returned labeling.

Network layout (nodes 0-based): graph node i is network node i-1, then
source, sink, and one auxiliary node per edge whose endpoints currently
disagree.  Arcs, in construction order:

* source -> i with capacity (Y_i - c)^2 / 2 (the cost of adopting c);
* i -> sink with capacity (Y_i - mu_i)^2 / 2 when mu_i != c, +inf when
  mu_i == c (keeping is free only of data cost; +inf pins nodes at c);
* for each edge with mu_i == mu_j, the antiparallel pair i <-> j with
  capacity lam * w * 1{mu_i != c};
* for each edge with mu_i != mu_j, an auxiliary node a with antiparallel
  pairs i <-> a (capacity lam * w * 1{mu_i != c}) and j <-> a (capacity
  lam * w * 1{mu_j != c}) plus the arc a -> sink of capacity lam * w.

``symmetric_tlinks=False`` drops the 1/2 on the keep-side capacity,
reproducing an asymmetric variant of the construction; the cut then
optimizes a tilted objective in which keeping the current value costs twice
its least-squares share, so only the default is used by the solver stack.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import Graph, as_signal
from .maxflow import FlowNetwork, min_st_cut_mask
from .resistance import resolve_weights

__all__ = [
    "ExpansionMove",
    "ExpansionLayout",
    "build_expansion_network",
    "alpha_expand",
]


@dataclass(frozen=True)
class ExpansionMove:
    """A proposed relabeling: nodes in ``adopt`` take ``level``, the rest
    keep their current value."""

    level: float
    adopt: np.ndarray

    def apply(self, mu: np.ndarray) -> np.ndarray:
        return np.where(self.adopt, self.level, mu)


@dataclass(frozen=True)
class ExpansionLayout:
    """Where the pieces of an expansion network live.

    Graph node i is network node i-1.  Edge ``aux_edge_indices[k]`` (an index
    into the graph's edge list) owns auxiliary network node
    ``aux_first + k``.
    """

    node_count: int
    source: int
    sink: int
    aux_first: int
    aux_edge_indices: np.ndarray


def build_expansion_network(
    g: Graph,
    Y: Sequence[float] | np.ndarray,
    mu: Sequence[float] | np.ndarray,
    w: Sequence[float] | np.ndarray,
    lam: float,
    c: float,
    *,
    symmetric_tlinks: bool = True,
) -> tuple[FlowNetwork, ExpansionLayout]:
    """Assemble the min-cut network encoding the level-c expansion problem."""
    Y = as_signal(g, Y)
    mu = as_signal(g, mu)
    w = resolve_weights(g, w)
    if not (np.isfinite(lam) and lam >= 0):
        raise ValueError(f"lam must be finite and >= 0, got {lam}")
    if not np.isfinite(c):
        raise ValueError(f"level must be finite, got {c}")

    n = g.node_count
    source, sink = n, n + 1
    ei, ej = g.edge_arrays
    same = mu[ei] == mu[ej]
    diff_idx = np.flatnonzero(~same)
    aux_first = n + 2
    aux = aux_first + np.arange(diff_idx.size, dtype=np.int64)

    nodes = np.arange(n, dtype=np.int64)
    adopt_cost = 0.5 * (Y - c) ** 2
    keep_cost = 0.5 * (Y - mu) ** 2 if symmetric_tlinks else (Y - mu) ** 2
    keep_cost = np.where(mu == c, np.inf, keep_cost)

    tails = [np.full(n, source, dtype=np.int64), nodes]
    heads = [nodes, np.full(n, sink, dtype=np.int64)]
    caps = [adopt_cost, keep_cost]

    same_idx = np.flatnonzero(same)
    if same_idx.size:
        a, b = ei[same_idx], ej[same_idx]
        cap_ab = lam * w[same_idx] * (mu[a] != c)
        k = same_idx.size
        t = np.empty(2 * k, dtype=np.int64)
        h = np.empty(2 * k, dtype=np.int64)
        cp = np.empty(2 * k)
        t[0::2], h[0::2] = a, b
        t[1::2], h[1::2] = b, a
        cp[0::2] = cp[1::2] = cap_ab
        tails.append(t)
        heads.append(h)
        caps.append(cp)

    if diff_idx.size:
        a, b = ei[diff_idx], ej[diff_idx]
        we = lam * w[diff_idx]
        cap_ia = we * (mu[a] != c)
        cap_ja = we * (mu[b] != c)
        k = diff_idx.size
        t = np.empty(5 * k, dtype=np.int64)
        h = np.empty(5 * k, dtype=np.int64)
        cp = np.empty(5 * k)
        t[0::5], h[0::5], cp[0::5] = a, aux, cap_ia
        t[1::5], h[1::5], cp[1::5] = aux, a, cap_ia
        t[2::5], h[2::5], cp[2::5] = b, aux, cap_ja
        t[3::5], h[3::5], cp[3::5] = aux, b, cap_ja
        t[4::5], h[4::5], cp[4::5] = aux, np.full(k, sink, dtype=np.int64), we
        tails.append(t)
        heads.append(h)
        caps.append(cp)

    net = FlowNetwork(
        node_count=aux_first + diff_idx.size,
        tails=np.concatenate(tails),
        heads=np.concatenate(heads),
        capacities=np.concatenate(caps),
        source=source,
        sink=sink,
    )
    layout = ExpansionLayout(
        node_count=n,
        source=source,
        sink=sink,
        aux_first=aux_first,
        aux_edge_indices=diff_idx,
    )
    return net, layout


def alpha_expand(
    mu: Sequence[float] | np.ndarray,
    Y: Sequence[float] | np.ndarray,
    g: Graph,
    lam: float,
    w: Sequence[float] | np.ndarray,
    c: float,
    *,
    symmetric_tlinks: bool = True,
) -> np.ndarray:
    """Best single expansion of mu at level c; returns the new signal.

    Nodes on the sink side of the minimum cut adopt c; nodes already at c
    always stay there.  The result is optimal over all expansions at c.
    """
    net, layout = build_expansion_network(
        g, Y, mu, w, lam, c, symmetric_tlinks=symmetric_tlinks
    )
    _, side = min_st_cut_mask(net)
    adopt = side[: layout.node_count] == 0
    move = ExpansionMove(level=float(c), adopt=adopt)
    return move.apply(np.asarray(mu, dtype=np.float64))
