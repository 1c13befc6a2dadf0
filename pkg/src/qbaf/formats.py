"""Text format for graphs and CSV output for trajectories.

Graph files hold one record per line:

    arg <name> <base_score>
    edge <src> <dst> <weight>

`#` starts a comment; blank lines are ignored. Names are alphanumeric tokens
(underscores allowed) mapped to ids 1..n in order of their `arg` lines, so
files stay human-writable while the model keeps numeric ids. Floats are
written in shortest round-trip form and parsed with round-to-nearest, making
serialize/parse bit-exact in both directions.
"""

from __future__ import annotations

import csv
import io
import re
from pathlib import Path
from typing import IO, Sequence

from .errors import IssueKind, QbafSyntaxError, ValidationError, ValidationIssue
from .model import EdgeWeightedQBAF, SolveReport, require_valid

_NAME_RE = re.compile(r"[A-Za-z0-9_]+\Z")


def _fmt(x: float) -> str:
    return repr(float(x))


def _split(line: str) -> list[str]:
    return line.split("#", 1)[0].split()


def _parse_float(token: str, lineno: int, what: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise QbafSyntaxError(f"bad {what} {token!r}", lineno) from None


def _check_name(token: str, lineno: int) -> str:
    if not _NAME_RE.match(token):
        raise QbafSyntaxError(f"bad name token {token!r}", lineno)
    return token


def parse_qbaf(text: str) -> EdgeWeightedQBAF:
    """Parse and validate a graph document.

    Raises:
        QbafSyntaxError: malformed line, reported with its line number.
        ValidationError: structural violations, every one reported with its line.
    """
    names: list[str] = []
    scores: list[float] = []
    ids: dict[str, int] = {}
    raw_edges: list[tuple[str, str, float, int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = _split(line)
        if not tokens:
            continue
        kind = tokens[0]
        if kind == "arg":
            if len(tokens) != 3:
                raise QbafSyntaxError("expected: arg <name> <base_score>", lineno)
            name = _check_name(tokens[1], lineno)
            if name in ids:
                raise QbafSyntaxError(f"argument {name!r} declared twice", lineno)
            score = _parse_float(tokens[2], lineno, "base score")
            ids[name] = len(names) + 1
            names.append(name)
            scores.append(score)
        elif kind == "edge":
            if len(tokens) != 4:
                raise QbafSyntaxError("expected: edge <src> <dst> <weight>", lineno)
            src = _check_name(tokens[1], lineno)
            dst = _check_name(tokens[2], lineno)
            weight = _parse_float(tokens[3], lineno, "weight")
            raw_edges.append((src, dst, weight, lineno))
        else:
            raise QbafSyntaxError(f"unknown record {kind!r}", lineno, column=1)

    issues: list[ValidationIssue] = []
    for i, (name, score) in enumerate(zip(names, scores)):
        if not 0.0 <= score <= 1.0:
            issues.append(
                ValidationIssue(
                    IssueKind.BASE_SCORE_OUT_OF_RANGE,
                    f"argument {name!r}: base score {score!r} outside [0, 1]",
                    line=_arg_line(text, i),
                )
            )
    edges: list[tuple[int, int, float]] = []
    seen: set[tuple[str, str]] = set()
    for src, dst, weight, lineno in raw_edges:
        missing = [t for t in (src, dst) if t not in ids]
        if missing:
            issues.append(
                ValidationIssue(
                    IssueKind.DANGLING_ENDPOINT,
                    f"edge references undeclared argument {missing[0]!r}",
                    line=lineno,
                )
            )
            continue
        if weight == 0.0:
            issues.append(
                ValidationIssue(
                    IssueKind.ZERO_WEIGHT_EDGE,
                    f"edge ({src}, {dst}) has weight 0",
                    line=lineno,
                )
            )
        if (src, dst) in seen:
            issues.append(
                ValidationIssue(
                    IssueKind.DUPLICATE_EDGE,
                    f"more than one edge ({src}, {dst})",
                    line=lineno,
                )
            )
        seen.add((src, dst))
        edges.append((ids[src], ids[dst], weight))
    if issues:
        raise ValidationError(issues)
    qbaf = EdgeWeightedQBAF.build(scores, edges, names=names)
    require_valid(qbaf)
    return qbaf


def _arg_line(text: str, index: int) -> int | None:
    """Line number of the index-th arg record (for error reporting)."""
    count = -1
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = _split(line)
        if tokens and tokens[0] == "arg":
            count += 1
            if count == index:
                return lineno
    return None


def serialize_qbaf(qbaf: EdgeWeightedQBAF) -> str:
    """Canonical text form: arguments in id order, then edges sorted by endpoints."""
    require_valid(qbaf)
    for name in qbaf.names:
        if not _NAME_RE.match(name):
            raise ValueError(f"name {name!r} is not serializable (alphanumeric tokens only)")
    lines = [
        f"arg {name} {_fmt(score)}"
        for name, score in zip(qbaf.names, qbaf.base_scores)
    ]
    for e in sorted(qbaf.edges, key=lambda e: (e.src, e.dst)):
        lines.append(f"edge {qbaf.names[e.src - 1]} {qbaf.names[e.dst - 1]} {_fmt(e.weight)}")
    return "\n".join(lines) + "\n"


def load_qbaf(path: str | Path) -> EdgeWeightedQBAF:
    return parse_qbaf(Path(path).read_text(encoding="utf-8"))


def save_qbaf(qbaf: EdgeWeightedQBAF, path: str | Path) -> None:
    Path(path).write_text(serialize_qbaf(qbaf), encoding="utf-8")


def write_trajectory(
    report: SolveReport,
    sink: str | Path | IO[str],
    names: Sequence[str] | None = None,
) -> None:
    """Write a recorded trajectory as CSV: header `step,<names...>`, one row per state.

    Discrete runs carry integer step indices, continuous runs decimal times.

    Raises:
        ValueError: if the report has no trajectory.
        OSError: if the sink cannot be opened or written.
    """
    if report.trajectory is None:
        raise ValueError("report carries no trajectory (record_trajectory was off)")
    if report.trajectory:
        width = len(report.trajectory[0][1])
    else:
        width = 0
    if names is None:
        names = [str(i) for i in range(1, width + 1)]
    if isinstance(sink, (str, Path)):
        with open(sink, "w", encoding="utf-8", newline="") as fh:
            _write_rows(report, fh, names)
    else:
        _write_rows(report, sink, names)


def _write_rows(report: SolveReport, fh: IO[str], names: Sequence[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["step", *names])
    for step, vec in report.trajectory or ():
        label = str(step) if isinstance(step, int) else _fmt(step)
        writer.writerow([label, *(_fmt(v) for v in vec)])


def trajectory_csv(report: SolveReport, names: Sequence[str] | None = None) -> str:
    buf = io.StringIO()
    write_trajectory(report, buf, names)
    return buf.getvalue()
