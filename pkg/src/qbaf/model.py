"""Core graph model: edge-weighted argumentation graphs and solver result types.

Arguments are identified by dense integer ids 1..n. Human-readable names are
kept alongside the ids so text files stay writable; they play no role in the
numerics. An edge with negative weight is an attack, positive weight a support;
weight 0 is rejected because the sign carries the meaning.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import (
    CyclicGraphError,
    IssueKind,
    UnknownArgumentError,
    ValidationError,
    ValidationIssue,
)


class Edge(NamedTuple):
    src: int
    dst: int
    weight: float


@dataclass(frozen=True)
class EdgeWeightedQBAF:
    """Immutable argumentation graph.

    Fields:
        names: one display name per argument; position i holds argument i+1.
        base_scores: apriori strength of each argument, in [0, 1].
        edges: directed weighted edges between argument ids.

    Instances may be structurally invalid (see :func:`validate`); solvers
    call :func:`require_valid` as their single admission gate.
    """

    names: tuple[str, ...]
    base_scores: tuple[float, ...]
    edges: tuple[Edge, ...]

    @classmethod
    def build(
        cls,
        base_scores: Sequence[float],
        edges: Iterable[tuple[int, int, float]] = (),
        names: Sequence[str] | None = None,
    ) -> "EdgeWeightedQBAF":
        """Convenience constructor; names default to the ids as strings."""
        scores = tuple(float(b) for b in base_scores)
        if names is None:
            names = tuple(str(i) for i in range(1, len(scores) + 1))
        return cls(
            names=tuple(names),
            base_scores=scores,
            edges=tuple(Edge(int(s), int(d), float(w)) for s, d, w in edges),
        )

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def arg_ids(self) -> range:
        return range(1, self.n + 1)

    def id_of(self, name: str) -> int:
        try:
            return self._name_index[name]
        except KeyError:
            raise UnknownArgumentError(f"unknown argument name {name!r}") from None

    def name_of(self, a: int) -> str:
        self._check_id(a)
        return self.names[a - 1]

    def _check_id(self, a: int) -> None:
        if not 1 <= a <= self.n:
            raise UnknownArgumentError(f"argument id {a} not in 1..{self.n}")

    @cached_property
    def _name_index(self) -> dict[str, int]:
        return {name: i + 1 for i, name in enumerate(self.names)}

    @cached_property
    def in_edges(self) -> tuple[tuple[Edge, ...], ...]:
        """In-edges per argument, indexed by id - 1."""
        buckets: list[list[Edge]] = [[] for _ in range(self.n)]
        for e in self.edges:
            if 1 <= e.dst <= self.n:
                buckets[e.dst - 1].append(e)
        return tuple(tuple(b) for b in buckets)

    @cached_property
    def out_neighbors(self) -> tuple[tuple[int, ...], ...]:
        buckets: list[list[int]] = [[] for _ in range(self.n)]
        for e in self.edges:
            if 1 <= e.src <= self.n and 1 <= e.dst <= self.n:
                buckets[e.src - 1].append(e.dst)
        return tuple(tuple(b) for b in buckets)

    def parents(self, a: int) -> frozenset[int]:
        self._check_id(a)
        return frozenset(e.src for e in self.in_edges[a - 1])

    def attackers(self, a: int) -> frozenset[int]:
        """Parents connected through a negative-weight edge."""
        self._check_id(a)
        return frozenset(e.src for e in self.in_edges[a - 1] if e.weight < 0)

    def supporters(self, a: int) -> frozenset[int]:
        """Parents connected through a positive-weight edge."""
        self._check_id(a)
        return frozenset(e.src for e in self.in_edges[a - 1] if e.weight > 0)

    @cached_property
    def beta(self) -> np.ndarray:
        arr = np.asarray(self.base_scores, dtype=float)
        arr.setflags(write=False)
        return arr

    @cached_property
    def weight_matrix(self) -> np.ndarray:
        """Dense matrix W with W[dst-1, src-1] = weight, so aggregate = W @ s."""
        mat = np.zeros((self.n, self.n))
        for e in self.edges:
            mat[e.dst - 1, e.src - 1] = e.weight
        mat.setflags(write=False)
        return mat

    @cached_property
    def _kahn_order(self) -> tuple[int, ...] | None:
        indeg = [0] * self.n
        for e in self.edges:
            indeg[e.dst - 1] += 1
        queue = deque(a for a in self.arg_ids if indeg[a - 1] == 0)
        order: list[int] = []
        while queue:
            a = queue.popleft()
            order.append(a)
            for b in self.out_neighbors[a - 1]:
                indeg[b - 1] -= 1
                if indeg[b - 1] == 0:
                    queue.append(b)
        return tuple(order) if len(order) == self.n else None

    def is_acyclic(self) -> bool:
        return self._kahn_order is not None

    def topological_order(self) -> tuple[int, ...]:
        """Ids ordered so that every edge points forward.

        Raises:
            CyclicGraphError: if the graph has a directed cycle.
        """
        order = self._kahn_order
        if order is None:
            raise CyclicGraphError("graph has a directed cycle")
        return order

    def reachable_from(self, a: int) -> frozenset[int]:
        """All arguments reachable from a by directed edges, including a itself."""
        self._check_id(a)
        seen = {a}
        stack = [a]
        while stack:
            u = stack.pop()
            for v in self.out_neighbors[u - 1]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return frozenset(seen)


def validate(qbaf: EdgeWeightedQBAF) -> list[ValidationIssue]:
    """Collect every structural violation; an empty list means valid."""
    issues: list[ValidationIssue] = []
    if len(qbaf.base_scores) != len(qbaf.names):
        issues.append(
            ValidationIssue(IssueKind.MALFORMED, "names and base scores differ in length")
        )
        return issues
    seen_names: set[str] = set()
    for i, name in enumerate(qbaf.names):
        if name in seen_names:
            issues.append(
                ValidationIssue(IssueKind.DUPLICATE_NAME, f"argument name {name!r} declared twice")
            )
        seen_names.add(name)
        b = qbaf.base_scores[i]
        if not (math.isfinite(b) and 0.0 <= b <= 1.0):
            issues.append(
                ValidationIssue(
                    IssueKind.BASE_SCORE_OUT_OF_RANGE,
                    f"argument {name!r}: base score {b!r} outside [0, 1]",
                )
            )
    seen_pairs: set[tuple[int, int]] = set()
    for e in qbaf.edges:
        if not (1 <= e.src <= qbaf.n and 1 <= e.dst <= qbaf.n):
            issues.append(
                ValidationIssue(
                    IssueKind.DANGLING_ENDPOINT,
                    f"edge ({e.src}, {e.dst}) references an undeclared argument",
                )
            )
            continue
        if e.weight == 0.0:
            issues.append(
                ValidationIssue(
                    IssueKind.ZERO_WEIGHT_EDGE,
                    f"edge ({qbaf.names[e.src - 1]}, {qbaf.names[e.dst - 1]}) has weight 0",
                )
            )
        elif not math.isfinite(e.weight):
            issues.append(
                ValidationIssue(
                    IssueKind.NONFINITE_WEIGHT,
                    f"edge ({qbaf.names[e.src - 1]}, {qbaf.names[e.dst - 1]}) "
                    f"has nonfinite weight {e.weight!r}",
                )
            )
        if (e.src, e.dst) in seen_pairs:
            issues.append(
                ValidationIssue(
                    IssueKind.DUPLICATE_EDGE,
                    f"more than one edge ({qbaf.names[e.src - 1]}, {qbaf.names[e.dst - 1]})",
                )
            )
        seen_pairs.add((e.src, e.dst))
    return issues


def require_valid(qbaf: EdgeWeightedQBAF) -> None:
    """Single admission gate used by every solver entry point."""
    issues = validate(qbaf)
    if issues:
        raise ValidationError(issues)


class SolveStatus(Enum):
    CONVERGED = "converged"
    OSCILLATING = "oscillating"
    MAX_ITERATIONS = "max-iterations"
    MAX_TIME = "max-time"


@dataclass(frozen=True)
class Interpretation:
    """Final strengths; None marks an undefined value (divergence)."""

    values: tuple[float | None, ...]

    @classmethod
    def from_array(cls, values) -> "Interpretation":
        return cls(tuple(float(v) for v in values))

    @classmethod
    def all_undefined(cls, n: int) -> "Interpretation":
        return cls((None,) * n)

    @property
    def fully_defined(self) -> bool:
        return all(v is not None for v in self.values)

    def __getitem__(self, a: int) -> float | None:
        return self.values[a - 1]

    def as_array(self) -> np.ndarray:
        """Dense strength vector; raises if any value is undefined."""
        if not self.fully_defined:
            raise ValueError("interpretation is partial")
        return np.asarray(self.values, dtype=float)

    def as_dict(self, names: Sequence[str]) -> dict[str, float | None]:
        return dict(zip(names, self.values))


@dataclass
class SolveReport:
    """Outcome of one solver run.

    trajectory, when recorded, holds (step-or-time, strength vector) pairs
    starting with the initial state.
    """

    status: SolveStatus
    interpretation: Interpretation
    steps: int
    residual: float
    trajectory: list[tuple[float, np.ndarray]] | None = None

    @property
    def converged(self) -> bool:
        return self.status is SolveStatus.CONVERGED
