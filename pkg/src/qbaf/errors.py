"""Exception types shared across the package."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class QbafError(Exception):
    """Base class for all domain errors raised by this package."""


class IssueKind(Enum):
    BASE_SCORE_OUT_OF_RANGE = "base-score-out-of-range"
    ZERO_WEIGHT_EDGE = "zero-weight-edge"
    NONFINITE_WEIGHT = "nonfinite-weight"
    DANGLING_ENDPOINT = "dangling-endpoint"
    DUPLICATE_EDGE = "duplicate-edge"
    DUPLICATE_NAME = "duplicate-name"
    MALFORMED = "malformed"


@dataclass(frozen=True)
class ValidationIssue:
    kind: IssueKind
    message: str
    line: int | None = None

    def __str__(self) -> str:
        if self.line is not None:
            return f"line {self.line}: {self.message} [{self.kind.value}]"
        return f"{self.message} [{self.kind.value}]"


class ValidationError(QbafError):
    """A graph violates one or more structural invariants.

    Carries every detected violation, not just the first one.
    """

    def __init__(self, issues):
        self.issues = tuple(issues)
        super().__init__("; ".join(str(i) for i in self.issues))


class QbafSyntaxError(QbafError):
    """Unparseable text input; reports the offending line (and column if known)."""

    def __init__(self, message: str, line: int, column: int | None = None):
        self.line = line
        self.column = column
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")


class UnknownArgumentError(QbafError):
    """An argument id or name does not belong to the graph."""


class CyclicGraphError(QbafError):
    """Operation requires an acyclic graph."""


class ExtremeBaseScoreError(QbafError):
    """Base score 0 or 1 has no finite log-odds counterpart."""


class MissingInputError(QbafError):
    """An input node has no assigned value."""


class InputOutOfRangeError(QbafError):
    """Input values must lie in [0, 1] to be representable as base scores."""


class NonUnitWeightsError(QbafError):
    """Property checks are only defined for weights in {-1, +1}."""


class PartialInterpretationError(QbafError):
    """Operation requires a fully defined interpretation."""
