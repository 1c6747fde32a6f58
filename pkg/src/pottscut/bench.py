"""Grid benchmark harness: signal generators, noise, scoring, experiments.

Four planted signals live on the side x side 4-neighbor grid, all two-valued
(kappa inside a region, 0 outside; 1-indexed rows i, columns j):

1. a disc:        (i - s/4)^2 + (j - s/4)^2 < (s/5)^2;
2. two discs:     case 1's disc or its mirror at (3s/4, 3s/4);
3. a rectangle:   |i - s/2| < s/4 and |j - s/2| < s/4;
4. two discs with squared radii modulated by |cos(10 pi i / n)|, which
   yields many connected pieces sharing the two values.

All comparisons are strict, with s = side and n = side^2.  Noise is iid
Gaussian from a counter-based Philox generator; repetition r of an
experiment with base seed s uses the key (s << 64) | r, so any repetition
can be regenerated in isolation and parallel execution cannot reorder
streams.

Accuracy is the Hausdorff partition distance: the larger, over both
directions, of max-over-blocks min-over-blocks symmetric-difference size.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import Partition, grid_graph, induced_partition
from .potts import SolverConfig
from .resistance import resolve_weights
from .selection import estimate_sigma2, select_lambda, spanning_path_order

__all__ = [
    "ExperimentSpec",
    "RepResult",
    "EvalReport",
    "generate_case",
    "add_noise",
    "rep_key",
    "hausdorff",
    "threshold_baseline",
    "write_pgm",
    "run_experiment",
    "DEFAULT_LAMBDAS",
]

DEFAULT_LAMBDAS: tuple[float, ...] = (1e-2, 1e-1, 1.0, 1e1, 1e2)
DEFAULT_DELTA: float = 1.0 / 60.0


def generate_case(case: int, side: int, kappa: float) -> np.ndarray:
    """Planted two-valued signal for one of the four cases, as a flat signal
    over the side x side grid (node (i, j) at index (i-1)*side + (j-1))."""
    if case not in (1, 2, 3, 4):
        raise ValueError(f"case must be 1..4, got {case}")
    if side < 1:
        raise ValueError(f"side must be >= 1, got {side}")
    if not np.isfinite(kappa):
        raise ValueError(f"kappa must be finite, got {kappa}")
    s = float(side)
    i = np.arange(1, side + 1, dtype=np.float64)[:, None]
    j = np.arange(1, side + 1, dtype=np.float64)[None, :]
    d_lo = (i - s / 4.0) ** 2 + (j - s / 4.0) ** 2
    d_hi = (i - 3.0 * s / 4.0) ** 2 + (j - 3.0 * s / 4.0) ** 2
    r2 = (s / 5.0) ** 2
    if case == 1:
        mask = d_lo < r2
    elif case == 2:
        mask = (d_lo < r2) | (d_hi < r2)
    elif case == 3:
        mask = (np.abs(i - s / 2.0) < s / 4.0) & (np.abs(j - s / 2.0) < s / 4.0)
    else:
        n = float(side * side)
        wob = np.abs(np.cos(10.0 * np.pi * i / n)) * r2
        mask = (d_lo < wob) | (d_hi < wob)
    return np.where(mask, float(kappa), 0.0).ravel()


def rep_key(seed: int, rep: int) -> int:
    """Philox key for one repetition: high word the base seed, low word the
    repetition index."""
    if seed < 0 or rep < 0:
        raise ValueError("seed and rep must be >= 0")
    return (int(seed) << 64) | int(rep)


def add_noise(
    mu: Sequence[float] | np.ndarray, sigma: float, seed: int
) -> np.ndarray:
    """mu plus iid N(0, sigma^2) noise from Philox keyed by seed.  sigma = 0
    returns mu bit-exactly."""
    if not (np.isfinite(sigma) and sigma >= 0):
        raise ValueError(f"sigma must be finite and >= 0, got {sigma}")
    mu = np.asarray(mu, dtype=np.float64)
    gen = np.random.Generator(np.random.Philox(key=int(seed)))
    return mu + sigma * gen.standard_normal(mu.size)


def hausdorff(a: Partition, b: Partition) -> int:
    """Hausdorff partition distance: max over both directions of
    max_{A} min_{B} |A symdiff B|."""
    if a.node_count != b.node_count:
        raise ValueError(
            f"partitions cover 1..{a.node_count} and 1..{b.node_count}"
        )
    la, lb = a.labels(), b.labels()
    inter = np.zeros((a.block_count, b.block_count), dtype=np.int64)
    np.add.at(inter, (la, lb), 1)
    sa = inter.sum(axis=1)
    sb = inter.sum(axis=0)
    symdiff = sa[:, None] + sb[None, :] - 2 * inter
    d_ab = symdiff.min(axis=1).max()
    d_ba = symdiff.min(axis=0).max()
    return int(max(d_ab, d_ba))


def threshold_baseline(
    Y: Sequence[float] | np.ndarray, level: float
) -> Partition:
    """Partition by thresholding: nodes with Y >= level versus the rest."""
    Y = np.asarray(Y, dtype=np.float64)
    return Partition.from_labels((Y >= level).astype(np.int64))


def write_pgm(
    path: str | os.PathLike, values: Sequence[float] | np.ndarray, side: int
) -> None:
    """Dump a grid signal as an ASCII graymap (P2).

    Values map linearly onto 0..255 with round-half-to-even; a constant
    signal maps to all zeros.
    """
    arr = np.asarray(values, dtype=np.float64)
    if arr.shape != (side * side,):
        raise ValueError(f"expected {side * side} values, got {arr.shape}")
    vmin, vmax = float(arr.min()), float(arr.max())
    if vmax > vmin:
        gray = np.rint((arr - vmin) / (vmax - vmin) * 255.0).astype(np.int64)
    else:
        gray = np.zeros(arr.size, dtype=np.int64)
    rows = gray.reshape(side, side)
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"P2\n{side} {side}\n255\n")
        for row in rows:
            fh.write(" ".join(str(int(v)) for v in row) + "\n")


@dataclass(frozen=True)
class ExperimentSpec:
    """Everything that determines a benchmark run's results.

    Execution details (worker count, output paths) live outside the spec, so
    identical specs produce identical reports.
    """

    case: int
    side: int
    kappa: float
    sigma: float
    repetitions: int
    seed: int
    delta: float = DEFAULT_DELTA
    lambdas: tuple[float, ...] = DEFAULT_LAMBDAS
    weighting: str = "unit"
    solver: str = "two_piece"

    def __post_init__(self) -> None:
        if self.case not in (1, 2, 3, 4):
            raise ValueError(f"case must be 1..4, got {self.case}")
        if self.side < 4:
            raise ValueError(f"side must be >= 4, got {self.side}")
        if not (np.isfinite(self.kappa) and self.kappa > 0):
            raise ValueError(f"kappa must be > 0, got {self.kappa}")
        if not (np.isfinite(self.sigma) and self.sigma >= 0):
            raise ValueError(f"sigma must be >= 0, got {self.sigma}")
        if self.repetitions < 1:
            raise ValueError(f"repetitions must be >= 1, got {self.repetitions}")
        if self.seed < 0:
            raise ValueError(f"seed must be >= 0, got {self.seed}")
        if not (np.isfinite(self.delta) and self.delta > 0):
            raise ValueError(f"delta must be > 0, got {self.delta}")
        if not self.lambdas or any(
            not (np.isfinite(v) and v >= 0) for v in self.lambdas
        ):
            raise ValueError("lambdas must be nonempty, finite, and >= 0")
        if self.weighting not in ("unit", "resistance"):
            raise ValueError(
                f"weighting must be 'unit' or 'resistance', got {self.weighting!r}"
            )
        if self.solver not in ("two_piece", "recursive"):
            raise ValueError(
                f"solver must be 'two_piece' or 'recursive', got {self.solver!r}"
            )


@dataclass(frozen=True)
class RepResult:
    rep: int
    seed: int
    lam: float
    hausdorff: int
    runtime_ms: float


@dataclass(frozen=True)
class EvalReport:
    """Per-repetition results plus both location summaries (the headline
    comparison number is the median)."""

    spec: ExperimentSpec
    rows: tuple[RepResult, ...]

    @property
    def distances(self) -> np.ndarray:
        return np.asarray([r.hausdorff for r in self.rows], dtype=np.int64)

    @property
    def median_hausdorff(self) -> float:
        return float(np.median(self.distances))

    @property
    def mean_hausdorff(self) -> float:
        return float(np.mean(self.distances))

    @property
    def mean_runtime_ms(self) -> float:
        return float(np.mean([r.runtime_ms for r in self.rows]))

    def _header(self) -> str:
        s = self.spec
        return (
            f"# prng=philox seed={s.seed} key=(seed<<64)|rep "
            f"case={s.case} side={s.side} kappa={s.kappa!r} sigma={s.sigma!r} "
            f"delta={s.delta!r} weighting={s.weighting} solver={s.solver}\n"
        )

    def write_csv(self, path: str | os.PathLike) -> None:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(self._header())
            fh.write("case,kappa,side,rep,seed,lambda,hausdorff,runtime_ms\n")
            s = self.spec
            for r in self.rows:
                fh.write(
                    f"{s.case},{s.kappa!r},{s.side},{r.rep},{r.seed},"
                    f"{r.lam!r},{r.hausdorff},{r.runtime_ms:.3f}\n"
                )

    def write_summary_csv(self, path: str | os.PathLike) -> None:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(self._header())
            fh.write(
                "case,kappa,side,repetitions,median_hausdorff,"
                "mean_hausdorff,mean_runtime_ms\n"
            )
            s = self.spec
            fh.write(
                f"{s.case},{s.kappa!r},{s.side},{s.repetitions},"
                f"{self.median_hausdorff!r},{self.mean_hausdorff!r},"
                f"{self.mean_runtime_ms:.3f}\n"
            )


def _run_rep(
    spec: ExperimentSpec, rep: int, weights: np.ndarray, pgm_dir: str | None
) -> RepResult:
    g = grid_graph(spec.side)
    mu_star = generate_case(spec.case, spec.side, spec.kappa)
    truth = induced_partition(mu_star)
    key = rep_key(spec.seed, rep)
    Y = add_noise(mu_star, spec.sigma, key)
    t0 = time.perf_counter()
    sigma2 = estimate_sigma2(Y, spanning_path_order(g))
    cfg = SolverConfig(
        delta=spec.delta, tau=sigma2, lam=0.0, weighting=weights
    )
    lam, mu = select_lambda(
        g, Y, spec.lambdas, cfg, solver=spec.solver, sigma2=sigma2
    )
    runtime_ms = (time.perf_counter() - t0) * 1000.0
    dist = hausdorff(induced_partition(mu), truth)
    if pgm_dir is not None:
        stem = os.path.join(pgm_dir, f"rep{rep:03d}")
        write_pgm(stem + "_data.pgm", Y, spec.side)
        write_pgm(stem + "_truth.pgm", mu_star, spec.side)
        write_pgm(stem + "_fit.pgm", mu, spec.side)
    return RepResult(
        rep=rep, seed=key, lam=lam, hausdorff=dist, runtime_ms=runtime_ms
    )


def run_experiment(
    spec: ExperimentSpec, *, jobs: int = 1, pgm_dir: str | None = None
) -> EvalReport:
    """Run every repetition of the spec and collect an EvalReport.

    ``jobs`` > 1 fans repetitions out to worker processes; results are
    identical to the serial run because each repetition owns its Philox key.
    ``pgm_dir`` additionally dumps data/truth/fit graymaps per repetition.
    """
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    if pgm_dir is not None:
        os.makedirs(pgm_dir, exist_ok=True)
    g = grid_graph(spec.side)
    weights = resolve_weights(g, spec.weighting)
    reps = range(spec.repetitions)
    if jobs == 1:
        rows = [_run_rep(spec, r, weights, pgm_dir) for r in reps]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(
                pool.map(
                    _run_rep,
                    [spec] * spec.repetitions,
                    reps,
                    [weights] * spec.repetitions,
                    [pgm_dir] * spec.repetitions,
                )
            )
    rows.sort(key=lambda r: r.rep)
    return EvalReport(spec=spec, rows=tuple(rows))
