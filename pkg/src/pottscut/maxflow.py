"""Minimum s-t cuts via Dinic's algorithm.

Two interchangeable kernels implement the solver: a Cython extension
(``pottscut._maxflow_core``) and a pure-Python twin
(``pottscut._maxflow_py``).  The compiled kernel is preferred at import time;
if it is missing, or the environment variable ``POTTSCUT_FORCE_PYTHON=1`` is
set, the fallback is used.  Both follow the same slot layout and traversal
order, so the choice never changes a result, only the speed.  ``BACKEND``
names the kernel in use.

Capacities may be +inf.  A network whose source reaches its sink through
infinite arcs alone has no finite cut; that is detected up front and raised
as NoFiniteCutError rather than returned as an infinite flow.

The reported source side is canonical: the set of nodes reachable from the
source in the final residual network, which is the unique minimal minimum
cut and is independent of augmentation order.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

if os.environ.get("POTTSCUT_FORCE_PYTHON") == "1":
    from . import _maxflow_py as _kernel

    BACKEND = "python"
else:
    try:
        from . import _maxflow_core as _kernel  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from . import _maxflow_py as _kernel  # type: ignore[no-redef]

        BACKEND = "python"

__all__ = [
    "FlowNetwork",
    "NoFiniteCutError",
    "min_st_cut",
    "min_st_cut_mask",
    "BACKEND",
]


class NoFiniteCutError(ValueError):
    """Every s-t cut of the network has infinite capacity."""


@dataclass(frozen=True)
class FlowNetwork:
    """Directed arcs with nonnegative float capacities (+inf allowed).

    Arc k runs tails[k] -> heads[k] with capacity capacities[k]; nodes are
    0..node_count-1.  An undirected link is modeled as two antiparallel arcs
    of equal capacity.  Arrays are frozen read-only at construction.
    """

    node_count: int
    tails: np.ndarray
    heads: np.ndarray
    capacities: np.ndarray
    source: int
    sink: int

    def __post_init__(self) -> None:
        tails = np.array(self.tails, dtype=np.int64)
        heads = np.array(self.heads, dtype=np.int64)
        caps = np.array(self.capacities, dtype=np.float64)
        if self.node_count < 2:
            raise ValueError("a flow network needs at least source and sink")
        if tails.shape != heads.shape or tails.shape != caps.shape:
            raise ValueError("tails, heads, capacities must have equal length")
        for name, node in (("source", self.source), ("sink", self.sink)):
            if not (0 <= node < self.node_count):
                raise ValueError(f"{name} {node} outside 0..{self.node_count - 1}")
        if self.source == self.sink:
            raise ValueError("source and sink must differ")
        if tails.size:
            all_ids = np.concatenate([tails, heads])
            if all_ids.min(initial=0) < 0 or all_ids.max(initial=0) >= self.node_count:
                raise ValueError("arc endpoint outside 0..node_count-1")
            if np.any(np.isnan(caps)) or np.any(caps < 0):
                raise ValueError("capacities must be >= 0 and not NaN")
        for name, arr in (("tails", tails), ("heads", heads), ("capacities", caps)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @classmethod
    def from_arcs(
        cls,
        node_count: int,
        arcs: Iterable[Sequence[float]],
        source: int,
        sink: int,
    ) -> "FlowNetwork":
        """Build from an iterable of (tail, head, capacity) triples."""
        triples = list(arcs)
        tails = np.asarray([a[0] for a in triples], dtype=np.int64)
        heads = np.asarray([a[1] for a in triples], dtype=np.int64)
        caps = np.asarray([a[2] for a in triples], dtype=np.float64)
        return cls(node_count, tails, heads, caps, source, sink)

    @property
    def arc_count(self) -> int:
        return int(self.tails.size)

    def arcs(self) -> list[tuple[int, int, float]]:
        """Arcs as (tail, head, capacity) triples in construction order."""
        return [
            (int(t), int(h), float(c))
            for t, h, c in zip(self.tails, self.heads, self.capacities)
        ]


def _infinite_path_exists(net: FlowNetwork) -> bool:
    """True iff the source reaches the sink using only +inf arcs."""
    inf_idx = np.flatnonzero(np.isinf(net.capacities))
    if inf_idx.size == 0:
        return False
    adj: dict[int, list[int]] = {}
    for k in inf_idx:
        adj.setdefault(int(net.tails[k]), []).append(int(net.heads[k]))
    seen = {net.source}
    pending = deque([net.source])
    while pending:
        u = pending.popleft()
        for v in adj.get(u, ()):
            if v == net.sink:
                return True
            if v not in seen:
                seen.add(v)
                pending.append(v)
    return False


def min_st_cut_mask(net: FlowNetwork) -> tuple[float, np.ndarray]:
    """Minimum s-t cut as (cut_value, uint8 source-side mask over nodes).

    The mask is the canonical minimal source side; re-running on the same
    network returns the identical mask.
    """
    if _infinite_path_exists(net):
        raise NoFiniteCutError(
            "source reaches sink through infinite arcs; no finite cut exists"
        )
    value, side = _kernel.max_flow_min_cut(
        net.node_count, net.tails, net.heads, net.capacities, net.source, net.sink
    )
    return float(value), side


def min_st_cut(net: FlowNetwork) -> tuple[float, frozenset[int]]:
    """Minimum s-t cut as (cut_value, source_side node set)."""
    value, side = min_st_cut_mask(net)
    return value, frozenset(int(v) for v in np.flatnonzero(side))
