#!/usr/bin/env python3
"""Time the compiled min-cut kernel against its pure-Python twin.

The kernel is chosen once at import time, so each backend runs in a fresh
subprocess: the parent launches itself twice with ``--inner`` (once with
``POTTSCUT_FORCE_PYTHON=1``, once without), collects per-workload timings,
and prints a side-by-side table with speedups.  The two kernels promise
bit-identical outputs, so each workload also emits a checksum and the
parent aborts on any cross-backend mismatch.

    python3 benchmarks/compare_backends.py
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def _two_piece_workload(side: int, delta: float, key: int):
    """Seeded two-block denoising solve; the solver spends essentially all
    of its time in one min-cut per candidate level."""
    from pottscut import (
        SolverConfig,
        add_noise,
        generate_case,
        grid_graph,
        induced_partition,
        objective,
        potts_two_piece,
        unit_weights,
    )

    g = grid_graph(side)
    truth = generate_case(3, side, 4.0)
    Y = add_noise(truth, 1.0, key)
    cfg = SolverConfig(lam=8.0, delta=delta, tau=0.0)

    def run() -> float:
        mu = potts_two_piece(g, Y, cfg)
        f = objective(Y, mu, g, unit_weights(g), cfg.lam)
        return f + induced_partition(mu).block_count

    levels = int((Y.max() - Y.min()) / delta) + 3
    return f"two-piece {side}x{side} grid, ~{levels} levels", run


def _raw_cut_workload(count: int, nodes: int, arcs_per_node: int):
    """Batch of random sparse networks with every node tied to a terminal,
    the same shape the expansion step builds."""
    from pottscut import FlowNetwork, min_st_cut

    rng = np.random.default_rng(5)
    nets = []
    for _ in range(count):
        tails, heads, caps = [], [], []
        for u in range(2, nodes):
            for v in rng.integers(2, nodes, size=arcs_per_node):
                if int(v) != u:
                    tails.append(u)
                    heads.append(int(v))
                    caps.append(int(rng.integers(1, 17)) / 4.0)
        for u in range(2, nodes):
            tails.extend([0, u])
            heads.extend([u, 1])
            caps.extend(
                [int(rng.integers(0, 33)) / 4.0, int(rng.integers(0, 33)) / 4.0]
            )
        nets.append(
            FlowNetwork.from_arcs(
                nodes,
                list(zip(tails, heads, caps)),
                source=0,
                sink=1,
            )
        )

    def run() -> float:
        total = 0.0
        for net in nets:
            value, side = min_st_cut(net)
            total += value + len(side)
        return total

    return f"raw min-cut, {count} nets of {nodes} nodes", run


def _workloads():
    return [
        _two_piece_workload(12, 0.5, key=(3 << 64) | 1),
        _two_piece_workload(16, 0.25, key=(3 << 64) | 2),
        _raw_cut_workload(40, 160, 3),
    ]


def _inner() -> None:
    import pottscut

    rows = []
    for name, run in _workloads():
        run()  # warm caches and JIT-independent setup out of the timing
        t0 = time.perf_counter()
        checksum = run()
        ms = (time.perf_counter() - t0) * 1000.0
        rows.append({"name": name, "ms": ms, "checksum": checksum})
    json.dump({"backend": pottscut.BACKEND, "rows": rows}, sys.stdout)


def _launch(force_python: bool) -> dict:
    env = dict(os.environ)
    env.pop("POTTSCUT_FORCE_PYTHON", None)
    if force_python:
        env["POTTSCUT_FORCE_PYTHON"] = "1"
    proc = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--inner"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(proc.stdout)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--inner", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()
    if args.inner:
        _inner()
        return

    fast = _launch(force_python=False)
    slow = _launch(force_python=True)
    if fast["backend"] == slow["backend"]:
        print(
            f"note: both runs used the {fast['backend']} kernel "
            "(extension not built?)"
        )

    width = max(len(r["name"]) for r in fast["rows"])
    print(f"{'workload':<{width}}  {'compiled':>10}  {'python':>10}  speedup")
    mismatch = False
    for rf, rs in zip(fast["rows"], slow["rows"]):
        ratio = rs["ms"] / rf["ms"] if rf["ms"] > 0 else float("inf")
        print(
            f"{rf['name']:<{width}}  {rf['ms']:>8.1f}ms  {rs['ms']:>8.1f}ms  "
            f"{ratio:>6.1f}x"
        )
        if rf["checksum"] != rs["checksum"]:
            mismatch = True
            print(
                f"  checksum mismatch: {rf['checksum']!r} vs {rs['checksum']!r}"
            )
    if mismatch:
        sys.exit("backends disagree; the kernels must produce identical cuts")
    print("results: identical across backends")


if __name__ == "__main__":
    main()
