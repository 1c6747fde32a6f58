"""Command-line interface.

Subcommands: ``resistance`` (edge weights), ``solve`` (fit a signal),
``simulate`` (draw a planted instance), ``bench`` (repeat experiments into
CSV reports), and ``eval`` (Hausdorff distance between partition files).

Exit status: 0 on success, 2 for usage errors, 3 for invalid inputs (files
that fail to parse or validate), 4 for solver failures.  Every failure
prints a single diagnostic line to stderr, and output files written before a
failure are removed, so a nonzero exit never leaves partial results behind.
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import os
import sys
from typing import Sequence

from . import fileio
from .bench import (
    DEFAULT_DELTA,
    DEFAULT_LAMBDAS,
    ExperimentSpec,
    add_noise,
    generate_case,
    hausdorff,
    run_experiment,
)
from .graph import GraphError, grid_graph, induced_partition
from .maxflow import NoFiniteCutError
from .potts import SolverConfig, objective, potts_two_piece
from .recursive import recursive_fit
from .resistance import effective_resistance_weights, resolve_weights
from .selection import estimate_sigma2, select_lambda, spanning_path_order

__all__ = ["main", "dispatch"]

_USAGE_EXIT = 2
_INPUT_EXIT = 3
_SOLVER_EXIT = 4


class _OutputTransaction:
    """Track files written by a command; remove them if the command fails."""

    def __init__(self) -> None:
        self.paths: list[str] = []

    def register(self, path: str | os.PathLike) -> str:
        path = os.fspath(path)
        self.paths.append(path)
        return path

    def rollback(self) -> None:
        for path in self.paths:
            try:
                os.unlink(path)
            except OSError:
                pass


def _parse_lambdas(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise ValueError(f"bad lambda list {text!r}") from None
    if not values:
        raise ValueError("lambda list is empty")
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pottscut",
        description="Piecewise-constant partition recovery on graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "resistance",
        help="effective-resistance edge weights for a graph file",
    )
    p.add_argument("graph", help="edge list file ('n m' header, then 'i j')")
    p.add_argument("-o", "--output", help="weights file to write (default stdout)")

    p = sub.add_parser("solve", help="fit a piecewise-constant signal")
    p.add_argument("graph", help="edge list file")
    p.add_argument("signal", help="signal file, one value per node line")
    p.add_argument(
        "--delta",
        type=float,
        default=None,
        help="value grid pitch (default: sigma_hat / sqrt(n))",
    )
    p.add_argument(
        "--tau",
        type=float,
        default=None,
        help="flag margin (default: sigma_hat^2)",
    )
    p.add_argument(
        "--lambda",
        dest="lam",
        type=float,
        default=None,
        help="edge penalty; omit to pick by BIC over --lambdas",
    )
    p.add_argument(
        "--lambdas",
        type=str,
        default=",".join(repr(v) for v in DEFAULT_LAMBDAS),
        help="comma-separated BIC candidates (default: %(default)s)",
    )
    p.add_argument(
        "--weights",
        default="unit",
        help="'unit' (default), 'resistance', or a weights file path",
    )
    p.add_argument(
        "--recursive",
        action="store_true",
        help="split blocks to a fixed point instead of a single two-piece fit",
    )
    p.add_argument(
        "--out-prefix",
        required=True,
        help="writes <prefix>.partition and <prefix>.fit",
    )

    p = sub.add_parser("simulate", help="draw one planted grid instance")
    p.add_argument("--case", type=int, required=True, choices=(1, 2, 3, 4))
    p.add_argument("--side", type=int, required=True, help="grid side length")
    p.add_argument("--kappa", type=float, required=True, help="jump size")
    p.add_argument("--sigma", type=float, required=True, help="noise level")
    p.add_argument("--seed", type=int, required=True, help="generator seed")
    p.add_argument(
        "--out-prefix",
        required=True,
        help="writes <prefix>.graph, <prefix>.signal, <prefix>.truth",
    )

    p = sub.add_parser(
        "bench", help="run repeated experiments from a key=value config"
    )
    p.add_argument(
        "config",
        help=(
            "file of key=value lines; keys: case, side, kappa, sigma, "
            "repetitions, seed, and optional delta (default 1/60), lambdas, "
            "weighting, solver"
        ),
    )
    p.add_argument("--out-dir", required=True, help="report directory")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument(
        "--pgm", action="store_true", help="dump data/truth/fit graymaps"
    )

    p = sub.add_parser(
        "eval", help="Hausdorff distance between two partition files"
    )
    p.add_argument("truth", help="reference partition file")
    p.add_argument("estimate", help="estimated partition file")

    return parser


def _cmd_resistance(args: argparse.Namespace, txn: _OutputTransaction) -> int:
    g = fileio.load_graph(args.graph)
    w = effective_resistance_weights(g)
    if args.output is None:
        for (i, j), v in zip(g.edges, w):
            print(f"{i} {j} {repr(float(v))}")
    else:
        fileio.save_weights(txn.register(args.output), g, w)
    return 0


def _cmd_solve(args: argparse.Namespace, txn: _OutputTransaction) -> int:
    g = fileio.load_graph(args.graph)
    Y = fileio.load_signal(args.signal)
    if Y.size != g.node_count:
        raise ValueError(
            f"signal has {Y.size} values for a {g.node_count}-node graph"
        )
    if args.weights in ("unit", "resistance"):
        w = resolve_weights(g, args.weights)
    else:
        w = fileio.load_weights(args.weights, g)

    sigma2 = None
    if args.delta is None or args.tau is None or args.lam is None:
        sigma2 = estimate_sigma2(Y, spanning_path_order(g))
    delta = args.delta if args.delta is not None else (
        math.sqrt(sigma2) / math.sqrt(g.node_count)
    )
    tau = args.tau if args.tau is not None else sigma2
    cfg = SolverConfig(delta=delta, tau=tau, lam=0.0, weighting=w)

    solver = "recursive" if args.recursive else "two_piece"
    if args.lam is not None:
        run_cfg = dataclasses.replace(cfg, lam=args.lam)
        if args.recursive:
            _, mu = recursive_fit(g, Y, run_cfg, weights=w)
        else:
            mu = potts_two_piece(g, Y, run_cfg, weights=w)
        lam = args.lam
    else:
        lam, mu = select_lambda(
            g,
            Y,
            _parse_lambdas(args.lambdas),
            cfg,
            solver=solver,
            sigma2=sigma2,
        )

    part = induced_partition(mu)
    fileio.save_partition(txn.register(args.out_prefix + ".partition"), part)
    fileio.save_signal(txn.register(args.out_prefix + ".fit"), mu)
    print(
        f"lambda={lam!r} delta={delta!r} tau={tau!r} "
        f"objective={objective(Y, mu, g, w, lam)!r} blocks={part.block_count}"
    )
    return 0


def _cmd_simulate(args: argparse.Namespace, txn: _OutputTransaction) -> int:
    if args.side < 2:
        raise ValueError(f"side must be >= 2, got {args.side}")
    if args.sigma < 0:
        raise ValueError(f"sigma must be >= 0, got {args.sigma}")
    if args.seed < 0:
        raise ValueError(f"seed must be >= 0, got {args.seed}")
    g = grid_graph(args.side)
    mu_star = generate_case(args.case, args.side, args.kappa)
    Y = add_noise(mu_star, args.sigma, args.seed)
    fileio.save_graph(txn.register(args.out_prefix + ".graph"), g)
    fileio.save_signal(txn.register(args.out_prefix + ".signal"), Y)
    fileio.save_partition(
        txn.register(args.out_prefix + ".truth"), induced_partition(mu_star)
    )
    return 0


_BENCH_KEYS = {
    "case": int,
    "side": int,
    "kappa": float,
    "sigma": float,
    "repetitions": int,
    "seed": int,
    "delta": float,
    "lambdas": _parse_lambdas,
    "weighting": str,
    "solver": str,
}


def _load_bench_config(path: str) -> ExperimentSpec:
    raw: dict[str, object] = {}
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            if "=" not in text:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {text!r}")
            key, value = (part.strip() for part in text.split("=", 1))
            if key not in _BENCH_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                raw[key] = _BENCH_KEYS[key](value)
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
    missing = {"case", "side", "kappa", "sigma", "repetitions", "seed"} - set(raw)
    if missing:
        raise ValueError(f"{path}: missing keys: {', '.join(sorted(missing))}")
    return ExperimentSpec(**raw)  # type: ignore[arg-type]


def _cmd_bench(args: argparse.Namespace, txn: _OutputTransaction) -> int:
    spec = _load_bench_config(args.config)
    os.makedirs(args.out_dir, exist_ok=True)
    report = run_experiment(
        spec,
        jobs=args.jobs,
        pgm_dir=args.out_dir if args.pgm else None,
    )
    report.write_csv(txn.register(os.path.join(args.out_dir, "report.csv")))
    report.write_summary_csv(
        txn.register(os.path.join(args.out_dir, "summary.csv"))
    )
    print(
        f"case={spec.case} side={spec.side} kappa={spec.kappa!r} "
        f"reps={spec.repetitions} median_hausdorff={report.median_hausdorff!r} "
        f"mean_hausdorff={report.mean_hausdorff!r}"
    )
    return 0


def _cmd_eval(args: argparse.Namespace, txn: _OutputTransaction) -> int:
    truth = fileio.load_partition(args.truth)
    estimate = fileio.load_partition(args.estimate)
    print(hausdorff(truth, estimate))
    return 0


_COMMANDS = {
    "resistance": _cmd_resistance,
    "solve": _cmd_solve,
    "simulate": _cmd_simulate,
    "bench": _cmd_bench,
    "eval": _cmd_eval,
}


def dispatch(argv: Sequence[str] | None = None) -> int:
    """Run one command; returns the process exit status."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    txn = _OutputTransaction()
    try:
        return _COMMANDS[args.command](args, txn)
    except (NoFiniteCutError, ArithmeticError, RuntimeError) as exc:
        txn.rollback()
        print(f"pottscut: solver failure: {exc}", file=sys.stderr)
        return _SOLVER_EXIT
    except (GraphError, ValueError, OSError) as exc:
        txn.rollback()
        print(f"pottscut: invalid input: {exc}", file=sys.stderr)
        return _INPUT_EXIT


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(dispatch(argv))


if __name__ == "__main__":
    main()
