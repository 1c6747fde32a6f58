"""Two-piece Potts solver: sweep a value grid, keep the best expansion.

The solver minimizes

    F(mu) = 1/2 * ||Y - mu||^2 + lam * sum_(i,j) w_ij * 1{mu_i != mu_j}

approximately, over signals taking at most two values.  Starting from the
constant fit at the sample mean, it tries one expansion move per level of
the grid delta*Z restricted to [min Y, max Y]; a candidate counts only if it
beats the constant fit by at least tau.  If none does, the constant fit is
returned, otherwise the best flagged candidate.  Ties across levels keep the
earlier (smaller) level via a strict comparison, so the output is a
deterministic function of the input.  The output therefore takes at most two
values: the sample mean and one grid level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .expansion import alpha_expand
from .graph import Graph, as_signal
from .resistance import resolve_weights

__all__ = [
    "SolverConfig",
    "objective",
    "snap_to_grid",
    "level_grid",
    "potts_two_piece",
    "is_local_minimiser",
]

# Absolute slack on the quotient value/delta when enumerating grid levels.
# Plain float division is accurate to ~1e-12 over the scales in play, so the
# slack only absorbs rounding, never invents levels.
_GRID_SLACK = 1e-9


@dataclass(frozen=True, eq=False)
class SolverConfig:
    """Solver knobs: grid pitch delta, flag margin tau, penalty lam, and the
    edge weighting ("unit", "resistance", or an explicit per-edge vector)."""

    delta: float
    tau: float
    lam: float
    weighting: str | Sequence[float] | np.ndarray = "unit"

    def __post_init__(self) -> None:
        if not (np.isfinite(self.delta) and self.delta > 0):
            raise ValueError(f"delta must be finite and > 0, got {self.delta}")
        if not (np.isfinite(self.tau) and self.tau >= 0):
            raise ValueError(f"tau must be finite and >= 0, got {self.tau}")
        if not (np.isfinite(self.lam) and self.lam >= 0):
            raise ValueError(f"lam must be finite and >= 0, got {self.lam}")

    @classmethod
    def from_sigma2(
        cls,
        sigma2: float,
        node_count: int,
        lam: float,
        weighting: str | Sequence[float] | np.ndarray = "unit",
    ) -> "SolverConfig":
        """Noise-calibrated defaults: delta = sigma_hat / sqrt(n), tau =
        sigma_hat^2."""
        if not (np.isfinite(sigma2) and sigma2 > 0):
            raise ValueError(f"sigma2 must be finite and > 0, got {sigma2}")
        return cls(
            delta=math.sqrt(sigma2) / math.sqrt(node_count),
            tau=sigma2,
            lam=lam,
            weighting=weighting,
        )


def objective(
    Y: Sequence[float] | np.ndarray,
    mu: Sequence[float] | np.ndarray,
    g: Graph,
    w: Sequence[float] | np.ndarray,
    lam: float,
) -> float:
    """Penalized least-squares value of mu; disagreement is exact float
    inequality."""
    Y = as_signal(g, Y)
    mu = as_signal(g, mu)
    w = resolve_weights(g, w)
    data = 0.5 * float(np.sum((Y - mu) ** 2))
    if g.edge_count == 0:
        return data
    ei, ej = g.edge_arrays
    return data + lam * float(w[mu[ei] != mu[ej]].sum())


def snap_to_grid(
    values: float | Sequence[float] | np.ndarray, delta: float
) -> float | np.ndarray:
    """Round to the nearest multiple of delta, half-way cases toward +inf."""
    if not (np.isfinite(delta) and delta > 0):
        raise ValueError(f"delta must be finite and > 0, got {delta}")
    arr = np.asarray(values, dtype=np.float64)
    snapped = np.floor(arr / delta + 0.5) * delta
    if np.isscalar(values) or arr.ndim == 0:
        return float(snapped)
    return snapped


def level_grid(lo: float, hi: float, delta: float) -> np.ndarray:
    """Ascending multiples of delta inside [lo, hi]; may be empty."""
    if not (np.isfinite(delta) and delta > 0):
        raise ValueError(f"delta must be finite and > 0, got {delta}")
    if not (np.isfinite(lo) and np.isfinite(hi)):
        raise ValueError("grid bounds must be finite")
    m_lo = math.ceil(lo / delta - _GRID_SLACK)
    m_hi = math.floor(hi / delta + _GRID_SLACK)
    if m_hi < m_lo:
        return np.zeros(0, dtype=np.float64)
    return np.arange(m_lo, m_hi + 1, dtype=np.float64) * delta


Expander = Callable[..., np.ndarray]


def potts_two_piece(
    g: Graph,
    Y: Sequence[float] | np.ndarray,
    cfg: SolverConfig,
    *,
    weights: Sequence[float] | np.ndarray | None = None,
    expander: Expander = alpha_expand,
) -> np.ndarray:
    """Approximate two-valued minimizer of the penalized objective.

    ``weights`` overrides cfg.weighting with a concrete per-edge vector (used
    when solving on subgraphs with restricted parent weights).  ``expander``
    is the single-level move solver and exists so a brute-force oracle can be
    substituted for the min-cut route in tests.
    """
    Y = as_signal(g, Y)
    if g.node_count == 1:
        return Y.copy()
    w = resolve_weights(g, cfg.weighting if weights is None else weights)

    mu_hat = np.full(g.node_count, float(Y.mean()))
    f_hat = objective(Y, mu_hat, g, w, cfg.lam)

    flagged = False
    best_mu: np.ndarray | None = None
    best_f = math.inf
    for c in level_grid(float(Y.min()), float(Y.max()), cfg.delta):
        cand = expander(mu_hat, Y, g, cfg.lam, w, float(c))
        f_cand = objective(Y, cand, g, w, cfg.lam)
        if f_cand <= f_hat - cfg.tau:
            flagged = True
            if f_cand < best_f:
                best_f = f_cand
                best_mu = cand
    if not flagged:
        return mu_hat
    assert best_mu is not None
    return best_mu


def is_local_minimiser(
    mu: Sequence[float] | np.ndarray,
    Y: Sequence[float] | np.ndarray,
    g: Graph,
    w: Sequence[float] | np.ndarray,
    lam: float,
    tau: float,
    delta: float,
) -> bool:
    """Exhaustively verify that no expansion of mu improves the objective by
    more than tau.

    Checks every (level, adopter-set) pair with levels drawn from the grid
    over [min Y - delta, max Y + delta]; comparisons are exact float.  Cost
    is 2^n per level, so this is a test oracle for small graphs only.
    """
    Y = as_signal(g, Y)
    mu = as_signal(g, mu)
    w = resolve_weights(g, w)
    n = g.node_count
    if n > 16:
        raise ValueError(f"exhaustive verifier is limited to n <= 16, got {n}")

    f_mu = objective(Y, mu, g, w, lam)
    ei, ej = g.edge_arrays
    bits = (
        np.arange(2**n, dtype=np.int64)[:, None] >> np.arange(n, dtype=np.int64)
    ) & 1
    adopt = bits.astype(bool)
    for c in level_grid(float(Y.min()) - delta, float(Y.max()) + delta, delta):
        cand = np.where(adopt, c, mu[None, :])
        data = 0.5 * ((Y[None, :] - cand) ** 2).sum(axis=1)
        if g.edge_count:
            pen = lam * (
                w[None, :] * (cand[:, ei] != cand[:, ej])
            ).sum(axis=1)
        else:
            pen = 0.0
        f_all = data + pen
        if np.any(f_all < f_mu - tau):
            return False
    return True
