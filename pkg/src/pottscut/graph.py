"""Graph primitives shared by every solver stage.

Nodes are the integers ``1..n`` and edges are unordered pairs stored in the
order they were given; that order is what edge-weight vectors and weight
files are indexed by.  Node signals are plain float arrays of length ``n``
(entry ``k`` belongs to node ``k+1``); partitions are frozen sets of blocks
covering ``1..n`` exactly.  Two signal entries belong to the same induced
block iff they compare equal as floats, so solver outputs must share bit
patterns, not merely be close.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Graph",
    "Partition",
    "Subgraph",
    "GraphError",
    "EndpointRangeError",
    "SelfLoopError",
    "DuplicateEdgeError",
    "DisconnectedGraphError",
    "PartitionError",
    "build_graph",
    "grid_graph",
    "as_signal",
    "induced_partition",
    "connected_pieces",
    "connected_components",
    "boundary_weight",
    "node_subgraph",
]


class GraphError(ValueError):
    """Base class for graph construction and validation failures."""


class EndpointRangeError(GraphError):
    """An edge endpoint lies outside 1..node_count."""


class SelfLoopError(GraphError):
    """An edge joins a node to itself."""


class DuplicateEdgeError(GraphError):
    """The same unordered pair appears twice in the edge list."""


class DisconnectedGraphError(GraphError):
    """An operation that requires a connected graph got a disconnected one."""


class PartitionError(ValueError):
    """Blocks are empty, overlap, or fail to cover 1..n."""


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on nodes 1..node_count.

    ``edges`` keeps the construction order and orientation; everything that
    is indexed per edge (weights, weight files) follows this order.
    """

    node_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.node_count < 1:
            raise GraphError(f"node_count must be >= 1, got {self.node_count}")
        seen: set[tuple[int, int]] = set()
        for i, j in self.edges:
            if not (1 <= i <= self.node_count) or not (1 <= j <= self.node_count):
                raise EndpointRangeError(
                    f"edge ({i}, {j}) has an endpoint outside 1..{self.node_count}"
                )
            if i == j:
                raise SelfLoopError(f"edge ({i}, {j}) is a self-loop")
            key = (i, j) if i < j else (j, i)
            if key in seen:
                raise DuplicateEdgeError(f"edge ({i}, {j}) appears more than once")
            seen.add(key)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Edge endpoints as 0-based int64 arrays (ei, ej), construction order."""
        if not self.edges:
            z = np.zeros(0, dtype=np.int64)
            return z, z.copy()
        arr = np.asarray(self.edges, dtype=np.int64) - 1
        ei = np.ascontiguousarray(arr[:, 0])
        ej = np.ascontiguousarray(arr[:, 1])
        return ei, ej

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        """Sorted neighbor ids per node; entry k is for node k+1."""
        adj: list[list[int]] = [[] for _ in range(self.node_count)]
        for i, j in self.edges:
            adj[i - 1].append(j)
            adj[j - 1].append(i)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def edge_keys(self) -> frozenset[tuple[int, int]]:
        """Unordered edge pairs normalized to (min, max)."""
        return frozenset((i, j) if i < j else (j, i) for i, j in self.edges)

    @cached_property
    def is_connected(self) -> bool:
        return len(connected_components(self)) == 1

    def has_edge(self, i: int, j: int) -> bool:
        return ((i, j) if i < j else (j, i)) in self.edge_keys

    def laplacian(self) -> np.ndarray:
        """Dense combinatorial Laplacian, float64, row/col k for node k+1."""
        n = self.node_count
        ei, ej = self.edge_arrays
        lap = np.zeros((n, n))
        np.add.at(lap, (ei, ej), -1.0)
        np.add.at(lap, (ej, ei), -1.0)
        deg = np.bincount(np.concatenate([ei, ej]), minlength=n).astype(float)
        lap[np.arange(n), np.arange(n)] = deg
        return lap


def build_graph(node_count: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Validate and freeze an edge list into a Graph.

    Raises EndpointRangeError, SelfLoopError, or DuplicateEdgeError depending
    on which constraint the input breaks.
    """
    pairs = tuple((int(i), int(j)) for i, j in edges)
    return Graph(int(node_count), pairs)


def grid_graph(side: int) -> Graph:
    """4-neighbor side x side grid.

    Node (i, j) (1-indexed row i, column j) gets id (i-1)*side + j.  Edges
    are emitted in row-major node order, right neighbor before down neighbor.
    """
    if side < 1:
        raise GraphError(f"side must be >= 1, got {side}")
    edges: list[tuple[int, int]] = []
    for i in range(1, side + 1):
        for j in range(1, side + 1):
            node = (i - 1) * side + j
            if j < side:
                edges.append((node, node + 1))
            if i < side:
                edges.append((node, node + side))
    return Graph(side * side, tuple(edges))


def as_signal(g: Graph, values: Sequence[float] | np.ndarray) -> np.ndarray:
    """Check a per-node value vector and return it as a float64 array."""
    out = np.asarray(values, dtype=np.float64)
    if out.shape != (g.node_count,):
        raise ValueError(
            f"signal has shape {out.shape}, expected ({g.node_count},)"
        )
    if not np.all(np.isfinite(out)):
        raise ValueError("signal entries must be finite")
    return out


@dataclass(frozen=True, eq=False)
class Partition:
    """A partition of 1..n into nonempty blocks.

    Blocks are canonically ordered by their smallest node, so two partitions
    compare equal iff they have the same blocks regardless of input order.
    """

    blocks: tuple[frozenset[int], ...]
    node_count: int = field(init=False)

    def __post_init__(self) -> None:
        total = 0
        seen: set[int] = set()
        for b in self.blocks:
            if not b:
                raise PartitionError("empty block")
            total += len(b)
            seen.update(b)
        if not self.blocks:
            raise PartitionError("partition has no blocks")
        n = max(seen)
        if len(seen) != total:
            raise PartitionError("blocks overlap")
        if len(seen) != n or min(seen) != 1:
            raise PartitionError("blocks must cover 1..n exactly")
        ordered = tuple(sorted(self.blocks, key=min))
        object.__setattr__(self, "blocks", ordered)
        object.__setattr__(self, "node_count", n)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> "Partition":
        return cls(tuple(frozenset(int(v) for v in b) for b in blocks))

    @classmethod
    def from_labels(cls, labels: Sequence[int] | np.ndarray) -> "Partition":
        """Group nodes by label; entry k labels node k+1."""
        groups: dict[int, list[int]] = {}
        for k, lab in enumerate(labels):
            groups.setdefault(int(lab), []).append(k + 1)
        return cls(tuple(frozenset(g) for g in groups.values()))

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    def labels(self) -> np.ndarray:
        """0-based block index per node (entry k is for node k+1)."""
        out = np.empty(self.node_count, dtype=np.int64)
        for idx, b in enumerate(self.blocks):
            for v in b:
                out[v - 1] = idx
        return out

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return frozenset(self.blocks) == frozenset(other.blocks)

    def __hash__(self) -> int:
        return hash(frozenset(self.blocks))


def induced_partition(values: Sequence[float] | np.ndarray) -> Partition:
    """Partition of 1..n by exact float equality of the value vector."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("values must be a nonempty 1-d vector")
    groups: dict[float, list[int]] = {}
    for k, v in enumerate(arr):
        groups.setdefault(float(v), []).append(k + 1)
    return Partition(tuple(frozenset(g) for g in groups.values()))


def _components_masked(g: Graph, edge_mask: np.ndarray | None) -> list[list[int]]:
    """Connected components (sorted node lists, ascending min) keeping only
    edges where edge_mask is True."""
    n = g.node_count
    ei, ej = g.edge_arrays
    if edge_mask is not None:
        ei, ej = ei[edge_mask], ej[edge_mask]
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in zip(ei.tolist(), ej.tolist()):
        adj[a].append(b)
        adj[b].append(a)
    seen = np.zeros(n, dtype=bool)
    comps: list[list[int]] = []
    for start in range(n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            u = stack.pop()
            comp.append(u + 1)
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
        comp.sort()
        comps.append(comp)
    return comps


def connected_components(g: Graph) -> list[list[int]]:
    """Connected components as sorted node lists, ordered by smallest node."""
    return _components_masked(g, None)


def connected_pieces(g: Graph, values: Sequence[float] | np.ndarray) -> int:
    """Number of connected components after dropping edges whose endpoint
    values differ.

    This can exceed the number of distinct values: equal-valued regions that
    are not connected in g count separately.
    """
    vals = as_signal(g, values)
    ei, ej = g.edge_arrays
    mask = vals[ei] == vals[ej]
    return len(_components_masked(g, mask))


def boundary_weight(
    g: Graph, weights: Sequence[float] | np.ndarray, p: Partition
) -> float:
    """Total weight of edges whose endpoints lie in different blocks of p."""
    w = np.asarray(weights, dtype=np.float64)
    if w.shape != (g.edge_count,):
        raise ValueError(
            f"weights has shape {w.shape}, expected ({g.edge_count},)"
        )
    if p.node_count != g.node_count:
        raise PartitionError(
            f"partition covers 1..{p.node_count}, graph has {g.node_count} nodes"
        )
    if g.edge_count == 0:
        return 0.0
    labels = p.labels()
    ei, ej = g.edge_arrays
    return float(w[labels[ei] != labels[ej]].sum())


@dataclass(frozen=True)
class Subgraph:
    """Induced subgraph with maps back to the parent graph.

    Sub-node k (1-based) is parent node parent_nodes[k-1]; sub-edge index e
    is parent edge index parent_edge_indices[e].  Edge order and orientation
    follow the parent, so restricting a parent weight vector is a single
    fancy-index.
    """

    graph: Graph
    parent_nodes: tuple[int, ...]
    parent_edge_indices: tuple[int, ...]


def node_subgraph(g: Graph, nodes: Iterable[int]) -> Subgraph:
    """Induced subgraph on a nonempty node subset, relabeled to 1..k.

    Sub-node ids follow ascending parent id; edges keep parent order.
    """
    keep = sorted({int(v) for v in nodes})
    if not keep:
        raise GraphError("node subset is empty")
    if keep[0] < 1 or keep[-1] > g.node_count:
        raise EndpointRangeError(
            f"subset contains nodes outside 1..{g.node_count}"
        )
    sub_id = {v: k + 1 for k, v in enumerate(keep)}
    edges: list[tuple[int, int]] = []
    edge_idx: list[int] = []
    for e, (i, j) in enumerate(g.edges):
        if i in sub_id and j in sub_id:
            edges.append((sub_id[i], sub_id[j]))
            edge_idx.append(e)
    return Subgraph(
        Graph(len(keep), tuple(edges)), tuple(keep), tuple(edge_idx)
    )
