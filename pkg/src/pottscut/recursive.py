"""Recursive partitioning: re-run the two-piece solver inside each block.

Each pass walks the blocks of the current partition (ascending smallest
node), fits the two-piece solver on the subgraph induced by the block, and
refines the partition with the fitted blocks.  A block whose induced
subgraph is disconnected is fitted per connected component and the results
merge by fitted value within the block, so equal-valued components rejoin.
The recursion stops at the first pass that leaves the partition unchanged,
which takes at most n passes because every earlier pass must split at least
one block.

Subgraph edge weights are restricted from the parent by default (a block's
edge keeps the weight it had in the full graph); ``subgraph_weights=
"recompute"`` rederives the configured weighting on each fitted component
instead, which changes resistance weights but not 0/1 weights.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .graph import (
    Graph,
    Partition,
    PartitionError,
    as_signal,
    connected_components,
    induced_partition,
    node_subgraph,
)
from .potts import SolverConfig, potts_two_piece
from .resistance import resolve_weights

__all__ = ["refine", "recursive_partition", "recursive_fit"]


def refine(a: Partition, b: Partition) -> Partition:
    """Common refinement of two partitions of the same node set: all
    nonempty pairwise block intersections."""
    if a.node_count != b.node_count:
        raise PartitionError(
            f"partitions cover 1..{a.node_count} and 1..{b.node_count}"
        )
    blocks = []
    for block_a in a.blocks:
        for block_b in b.blocks:
            common = block_a & block_b
            if common:
                blocks.append(common)
    return Partition(tuple(blocks))


def _fit_block(
    g: Graph,
    Y: np.ndarray,
    cfg: SolverConfig,
    w_parent: np.ndarray,
    block: frozenset[int],
    mu: np.ndarray,
    recompute: bool,
) -> None:
    """Fit one block in place: run the two-piece solver per connected
    component of the induced subgraph and write the values into mu."""
    sub = node_subgraph(g, block)
    w_sub = w_parent[np.asarray(sub.parent_edge_indices, dtype=np.int64)]
    parent_ids = np.asarray(sub.parent_nodes, dtype=np.int64)
    for comp in connected_components(sub.graph):
        csub = node_subgraph(sub.graph, comp)
        if recompute and isinstance(cfg.weighting, str):
            w_comp = resolve_weights(csub.graph, cfg.weighting)
        else:
            w_comp = w_sub[np.asarray(csub.parent_edge_indices, dtype=np.int64)]
        comp_parent = parent_ids[np.asarray(csub.parent_nodes, dtype=np.int64) - 1]
        mu_comp = potts_two_piece(
            csub.graph, Y[comp_parent - 1], cfg, weights=w_comp
        )
        mu[comp_parent - 1] = mu_comp


def recursive_fit(
    g: Graph,
    Y: Sequence[float] | np.ndarray,
    cfg: SolverConfig,
    *,
    weights: Sequence[float] | np.ndarray | None = None,
    subgraph_weights: str = "restrict",
) -> tuple[Partition, np.ndarray]:
    """Run the recursion to a fixed point; returns (partition, fitted signal).

    The partition is the accumulated refinement, which can be finer than the
    partition induced by the fitted values when separate blocks happen to
    fit the same constant.
    """
    if subgraph_weights not in ("restrict", "recompute"):
        raise ValueError(
            f"subgraph_weights must be 'restrict' or 'recompute', "
            f"got {subgraph_weights!r}"
        )
    Y = as_signal(g, Y)
    n = g.node_count
    w_parent = resolve_weights(g, cfg.weighting if weights is None else weights)
    recompute = subgraph_weights == "recompute"

    mu = np.zeros(n)
    passes = 0
    while True:
        passes += 1
        if passes > n:
            raise RuntimeError(
                f"partition did not stabilize within {n} passes"
            )
        snapshot = induced_partition(mu)
        current = snapshot
        for block in snapshot.blocks:
            _fit_block(g, Y, cfg, w_parent, block, mu, recompute)
            local: dict[float, list[int]] = {}
            for v in sorted(block):
                local.setdefault(float(mu[v - 1]), []).append(v)
            ext_blocks = [frozenset(nodes) for nodes in local.values()]
            rest = frozenset(range(1, n + 1)) - block
            if rest:
                ext_blocks.append(rest)
            current = refine(current, Partition(tuple(ext_blocks)))
        if current == snapshot:
            return current, mu


def recursive_partition(
    g: Graph,
    Y: Sequence[float] | np.ndarray,
    cfg: SolverConfig,
    *,
    weights: Sequence[float] | np.ndarray | None = None,
    subgraph_weights: str = "restrict",
) -> Partition:
    """Partition from the recursive fit (see recursive_fit)."""
    part, _ = recursive_fit(
        g, Y, cfg, weights=weights, subgraph_weights=subgraph_weights
    )
    return part
