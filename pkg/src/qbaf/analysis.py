"""Structural convergence analysis for the discrete solver.

The one-step update is Lipschitz with constant W * P / 4 in the max norm,
where W is the largest edge-weight magnitude and P the largest in-degree
(the logistic has derivative at most 1/4; the weighted sum contributes at
most W * P). Acyclic graphs converge regardless, in a single forward pass.

W is taken as max |w|: the contraction argument works with magnitudes, and
the known divergent family uses |w| = 0.7 on attack edges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import EdgeWeightedQBAF, require_valid


@dataclass(frozen=True)
class GuaranteeReport:
    """Convergence guarantees derived from graph shape alone.

    contraction is W * P / 4; guaranteed holds iff the graph is acyclic or
    the contraction is below 1; the iteration-bound formula applies exactly
    when the contraction is below 1.
    """

    acyclic: bool
    max_parents: int
    max_weight: float
    contraction: float
    guaranteed: bool
    bound_formula_applicable: bool


def analyze(qbaf: EdgeWeightedQBAF) -> GuaranteeReport:
    """Compute in-degree and weight bounds and the resulting guarantee flags."""
    require_valid(qbaf)
    max_parents = max((len(es) for es in qbaf.in_edges), default=0)
    max_weight = max((abs(e.weight) for e in qbaf.edges), default=0.0)
    contraction = max_weight * max_parents / 4.0
    acyclic = qbaf.is_acyclic()
    return GuaranteeReport(
        acyclic=acyclic,
        max_parents=max_parents,
        max_weight=max_weight,
        contraction=contraction,
        guaranteed=acyclic or contraction < 1.0,
        bound_formula_applicable=contraction < 1.0,
    )


def iteration_bound(epsilon: float, max_weight: float, max_parents: int) -> int | None:
    """Iterations after which every strength is within epsilon of its limit.

    Returns the smallest integer strictly greater than
    log(epsilon) / log(W * P / 4), or None when W * P >= 4 (the contraction
    argument does not apply). Any epsilon >= 1 is trivially satisfied (0).

    Raises:
        ValueError: if epsilon is not positive.
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    product = max_weight * max_parents
    if product >= 4.0:
        return None
    if epsilon >= 1.0:
        return 0
    if product == 0.0:
        # no edges: the first sweep is already exact
        return 1
    ratio = math.log(epsilon) / math.log(product / 4.0)
    return math.floor(ratio) + 1
