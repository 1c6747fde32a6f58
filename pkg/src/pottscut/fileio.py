"""Plain-text file formats for graphs, signals, partitions, and weights.

All formats are line oriented and whitespace separated:

* graph: header ``n m`` followed by m lines ``i j`` (1-based endpoints);
* signal: n lines, one real per line (node k on line k);
* partition: n lines, one integer block label per line;
* weights: m lines ``i j w`` in the graph's edge order.

Floats are written with ``repr`` so every file round-trips bit-exactly
through its loader.
"""

from __future__ import annotations

import os
from typing import Sequence

import numpy as np

from .graph import Graph, Partition, build_graph

__all__ = [
    "load_graph",
    "save_graph",
    "load_signal",
    "save_signal",
    "load_partition",
    "save_partition",
    "load_weights",
    "save_weights",
]


def _lines(path: str | os.PathLike) -> list[tuple[int, str]]:
    """Non-blank lines with 1-based line numbers, comments (#) stripped."""
    out = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.split("#", 1)[0].strip()
            if text:
                out.append((lineno, text))
    return out


def _fail(path: str | os.PathLike, lineno: int, msg: str) -> ValueError:
    return ValueError(f"{path}:{lineno}: {msg}")


def load_graph(path: str | os.PathLike) -> Graph:
    lines = _lines(path)
    if not lines:
        raise _fail(path, 1, "empty graph file")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise _fail(path, lineno, f"expected header 'n m', got {header!r}")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise _fail(path, lineno, f"non-integer header {header!r}") from None
    body = lines[1:]
    if len(body) != m:
        raise _fail(
            path, lineno, f"header promises {m} edges, file has {len(body)}"
        )
    edges = []
    for lineno, text in body:
        parts = text.split()
        if len(parts) != 2:
            raise _fail(path, lineno, f"expected 'i j', got {text!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise _fail(path, lineno, f"non-integer endpoint in {text!r}") from None
    return build_graph(n, edges)


def save_graph(path: str | os.PathLike, g: Graph) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{g.node_count} {g.edge_count}\n")
        for i, j in g.edges:
            fh.write(f"{i} {j}\n")


def load_signal(path: str | os.PathLike) -> np.ndarray:
    lines = _lines(path)
    values = []
    for lineno, text in lines:
        try:
            values.append(float(text))
        except ValueError:
            raise _fail(path, lineno, f"non-numeric value {text!r}") from None
    if not values:
        raise _fail(path, 1, "empty signal file")
    out = np.asarray(values, dtype=np.float64)
    if not np.all(np.isfinite(out)):
        raise _fail(path, 1, "signal entries must be finite")
    return out


def save_signal(path: str | os.PathLike, values: Sequence[float] | np.ndarray) -> None:
    arr = np.asarray(values, dtype=np.float64)
    with open(path, "w", encoding="ascii") as fh:
        for v in arr:
            fh.write(repr(float(v)) + "\n")


def load_partition(path: str | os.PathLike) -> Partition:
    lines = _lines(path)
    labels = []
    for lineno, text in lines:
        try:
            labels.append(int(text))
        except ValueError:
            raise _fail(path, lineno, f"non-integer label {text!r}") from None
    if not labels:
        raise _fail(path, 1, "empty partition file")
    return Partition.from_labels(labels)


def save_partition(path: str | os.PathLike, p: Partition) -> None:
    labels = p.labels()
    with open(path, "w", encoding="ascii") as fh:
        for lab in labels:
            fh.write(f"{int(lab)}\n")


def load_weights(path: str | os.PathLike, g: Graph) -> np.ndarray:
    """Load per-edge weights and check they follow g's edge list exactly."""
    lines = _lines(path)
    if len(lines) != g.edge_count:
        raise _fail(
            path, 1, f"expected {g.edge_count} weight lines, got {len(lines)}"
        )
    out = np.empty(g.edge_count, dtype=np.float64)
    for e, (lineno, text) in enumerate(lines):
        parts = text.split()
        if len(parts) != 3:
            raise _fail(path, lineno, f"expected 'i j w', got {text!r}")
        try:
            i, j, w = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise _fail(path, lineno, f"malformed weight line {text!r}") from None
        gi, gj = g.edges[e]
        if {i, j} != {gi, gj}:
            raise _fail(
                path,
                lineno,
                f"edge ({i}, {j}) does not match graph edge {e} = ({gi}, {gj})",
            )
        if not np.isfinite(w) or w < 0:
            raise _fail(path, lineno, f"weight must be finite and >= 0, got {w}")
        out[e] = w
    return out


def save_weights(
    path: str | os.PathLike, g: Graph, weights: Sequence[float] | np.ndarray
) -> None:
    arr = np.asarray(weights, dtype=np.float64)
    if arr.shape != (g.edge_count,):
        raise ValueError(
            f"weights has shape {arr.shape}, expected ({g.edge_count},)"
        )
    with open(path, "w", encoding="ascii") as fh:
        for (i, j), w in zip(g.edges, arr):
            fh.write(f"{i} {j} {repr(float(w))}\n")
