"""Discrete semantics: synchronous logistic updates iterated to a fixed point.

Each step replaces every strength simultaneously by

    new_s[a] = logistic(log_odds(base_score[a]) + sum of w(b, a) * s[b])

Base scores of exactly 0 or 1 have infinite log-odds, which IEEE arithmetic
propagates through the finite aggregate, so such arguments stay pinned at
their base score without any special casing in the loop.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import expit, logit

from .model import (
    EdgeWeightedQBAF,
    Interpretation,
    SolveReport,
    SolveStatus,
    require_valid,
)


@dataclass(frozen=True)
class IterationConfig:
    """Stopping policy for the fixed-point loop.

    tolerance: max-norm threshold for the one-step change (convergence) and
        the window-back change (oscillation).
    oscillation_window: how many steps back the cycle detector compares
        against; 0 disables detection so runs always go to convergence or
        the iteration cap (used when recording full trajectories).
    """

    tolerance: float = 1e-6
    max_iterations: int = 10_000
    record_trajectory: bool = False
    oscillation_window: int = 2

    def __post_init__(self) -> None:
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if self.oscillation_window < 0:
            raise ValueError("oscillation_window must be >= 0")


def log_odds_vector(qbaf: EdgeWeightedQBAF) -> np.ndarray:
    """log(beta / (1 - beta)) per argument, with +/-inf at the extremes."""
    with np.errstate(divide="ignore"):
        return logit(qbaf.beta)


def influence(beta, alpha):
    """Logistic influence of an aggregate on a base score.

    Computes logistic(log_odds(beta) + alpha), i.e.
    1 / (1 + ((1 - beta) / beta) * exp(-alpha)). Total on beta in [0, 1] and
    finite alpha: beta 0 or 1 yields exactly 0 or 1 regardless of alpha.
    Accepts scalars or arrays (broadcast).
    """
    b = np.asarray(beta, dtype=float)
    a = np.asarray(alpha, dtype=float)
    with np.errstate(divide="ignore"):
        out = expit(logit(b) + a)
    if out.ndim == 0:
        return float(out)
    return out


def aggregate(qbaf: EdgeWeightedQBAF, s, a: int) -> float:
    """Weighted sum of parent strengths flowing into argument a; 0 without parents."""
    qbaf._check_id(a)
    vec = np.asarray(s, dtype=float)
    return float(sum(e.weight * vec[e.src - 1] for e in qbaf.in_edges[a - 1]))


def update(qbaf: EdgeWeightedQBAF, s) -> np.ndarray:
    """One synchronous update of all strengths."""
    vec = np.asarray(s, dtype=float)
    return expit(log_odds_vector(qbaf) + qbaf.weight_matrix @ vec)


def residual(qbaf: EdgeWeightedQBAF, s) -> float:
    """Max-norm distance from being a fixed point of the update."""
    vec = np.asarray(s, dtype=float)
    if vec.size == 0:
        return 0.0
    return float(np.max(np.abs(update(qbaf, vec) - vec)))


def solve_acyclic(qbaf: EdgeWeightedQBAF) -> Interpretation:
    """Exact strengths for an acyclic graph in one pass over a topological order.

    Raises:
        CyclicGraphError: if the graph has a cycle.
        ValidationError: if the graph is structurally invalid.
    """
    require_valid(qbaf)
    order = qbaf.topological_order()
    lo = log_odds_vector(qbaf)
    s = np.array(qbaf.beta)
    for a in order:
        acc = 0.0
        for e in qbaf.in_edges[a - 1]:
            acc += e.weight * s[e.src - 1]
        s[a - 1] = expit(lo[a - 1] + acc)
    return Interpretation.from_array(s)


def iterate(qbaf: EdgeWeightedQBAF, config: IterationConfig | None = None) -> SolveReport:
    """Fixed-point iteration from the base scores with divergence detection.

    Stops with CONVERGED when the one-step change drops below the tolerance,
    with OSCILLATING when the state matches the one from `oscillation_window`
    steps back while still moving step to step, and with MAX_ITERATIONS
    otherwise. Non-converged runs leave every strength undefined.
    """
    cfg = config or IterationConfig()
    require_valid(qbaf)
    n = qbaf.n
    if n == 0:
        return SolveReport(SolveStatus.CONVERGED, Interpretation(()), 0, 0.0,
                           [(0, np.zeros(0))] if cfg.record_trajectory else None)
    lo = log_odds_vector(qbaf)
    wmat = qbaf.weight_matrix
    s = np.array(qbaf.beta)
    trajectory = [(0, s.copy())] if cfg.record_trajectory else None
    window = cfg.oscillation_window
    recent: list[np.ndarray] = [s]
    delta = np.inf
    for k in range(1, cfg.max_iterations + 1):
        s_next = expit(lo + wmat @ s)
        delta = float(np.max(np.abs(s_next - s)))
        if trajectory is not None:
            trajectory.append((k, s_next.copy()))
        if delta < cfg.tolerance:
            return SolveReport(
                SolveStatus.CONVERGED,
                Interpretation.from_array(s_next),
                k,
                delta,
                trajectory,
            )
        if window > 0 and len(recent) >= window:
            back = recent[-window]
            if float(np.max(np.abs(s_next - back))) < cfg.tolerance:
                return SolveReport(
                    SolveStatus.OSCILLATING,
                    Interpretation.all_undefined(n),
                    k,
                    delta,
                    trajectory,
                )
        recent.append(s_next)
        if len(recent) > window + 1:
            recent.pop(0)
        s = s_next
    return SolveReport(
        SolveStatus.MAX_ITERATIONS,
        Interpretation.all_undefined(n),
        cfg.max_iterations,
        delta,
        trajectory,
    )
