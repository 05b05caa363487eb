"""Uniform verification records, line-delimited serialization and summaries.

Every check in the package produces a :class:`VerificationReport`.  Reports
are written one per line, either as JSON (``structured``) or as a short
human-readable line (``text``).  The structured form round-trips exactly
through :func:`parse`.
"""

from __future__ import annotations

import enum
import json
import math
import threading
import time
from collections import Counter
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import IO, Any, Iterable, Iterator


class Verdict(str, enum.Enum):
    GREEN = "green"
    RED = "red"
    INCONCLUSIVE = "inconclusive"
    REFUSED = "refused"


class ReportError(ValueError):
    """A report violates its own shape invariants."""


@dataclass
class VerificationReport:
    claim_id: str
    verdict: Verdict
    parameters: dict[str, Any] = field(default_factory=dict)
    witnesses: list[Any] = field(default_factory=list)
    metrics: dict[str, float] = field(default_factory=dict)
    guard: str | None = None
    seed: int | None = None
    elapsed: float = 0.0

    def __post_init__(self):
        self.verdict = Verdict(self.verdict)
        if self.verdict is Verdict.RED and not self.witnesses:
            raise ReportError(f"{self.claim_id}: red verdict without a witness")
        if self.verdict is Verdict.REFUSED and not self.guard:
            raise ReportError(f"{self.claim_id}: refused verdict without a guard")

    def to_dict(self, timing: bool = True) -> dict[str, Any]:
        out: dict[str, Any] = {
            "claim_id": self.claim_id,
            "verdict": self.verdict.value,
            "parameters": dict(sorted(self.parameters.items())),
            "witnesses": list(self.witnesses),
            "metrics": dict(sorted(self.metrics.items())),
            "guard": self.guard,
            "seed": self.seed,
        }
        if timing:
            out["elapsed"] = self.elapsed
        return out

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "VerificationReport":
        return cls(
            claim_id=d["claim_id"],
            verdict=Verdict(d["verdict"]),
            parameters=dict(d.get("parameters", {})),
            witnesses=list(d.get("witnesses", [])),
            metrics=dict(d.get("metrics", {})),
            guard=d.get("guard"),
            seed=d.get("seed"),
            elapsed=d.get("elapsed", 0.0),
        )


def green_or_red(claim_id: str, failures: list, **kwargs) -> VerificationReport:
    """Green when ``failures`` is empty, red with the failures as witnesses otherwise."""
    verdict = Verdict.RED if failures else Verdict.GREEN
    return VerificationReport(claim_id, verdict, witnesses=list(failures), **kwargs)


def refused(claim_id: str, guard: str, **parameters) -> VerificationReport:
    return VerificationReport(claim_id, Verdict.REFUSED, parameters=parameters, guard=guard)


@contextmanager
def timed() -> Iterator[list[float]]:
    """Yield a one-element list that receives the elapsed seconds on exit."""
    box = [0.0]
    t0 = time.perf_counter()
    try:
        yield box
    finally:
        box[0] = time.perf_counter() - t0


def _format_text(report: VerificationReport, timing: bool) -> str:
    params = " ".join(f"{k}={v}" for k, v in sorted(report.parameters.items()))
    parts = [f"[{report.verdict.value.upper()}]", report.claim_id]
    if params:
        parts.append(params)
    if report.metrics:
        parts.append(" ".join(f"{k}={v:.3g}" for k, v in sorted(report.metrics.items())))
    if report.guard:
        parts.append(f"guard: {report.guard}")
    if report.witnesses:
        shown = report.witnesses[:3]
        more = f" (+{len(report.witnesses) - 3} more)" if len(report.witnesses) > 3 else ""
        parts.append("witnesses: " + json.dumps(shown) + more)
    if timing:
        parts.append(f"({report.elapsed:.3f}s)")
    return " ".join(parts)


def emit(report: VerificationReport, sink: IO[str], fmt: str = "structured", timing: bool = True) -> None:
    """Append one self-delimiting record for ``report`` to ``sink``."""
    if fmt == "structured":
        line = json.dumps(report.to_dict(timing=timing), separators=(",", ":"))
    elif fmt == "text":
        line = _format_text(report, timing)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    sink.write(line + "\n")
    sink.flush()


def parse(line: str) -> VerificationReport:
    return VerificationReport.from_dict(json.loads(line))


class ReportWriter:
    """Serializes emission from concurrent producers onto one sink."""

    def __init__(self, sinks: Iterable[tuple[IO[str], str]], timing: bool = False):
        self._sinks = list(sinks)
        self._timing = timing
        self._lock = threading.Lock()
        self.reports: list[VerificationReport] = []

    def __call__(self, report: VerificationReport) -> None:
        with self._lock:
            self.reports.append(report)
            for sink, fmt in self._sinks:
                emit(report, sink, fmt, self._timing)


@dataclass
class Summary:
    counts: dict[str, int]
    worst_metrics: dict[str, float]
    total_elapsed: float
    duplicate_claim_ids: list[str]

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def aggregate(reports: Iterable[VerificationReport]) -> Summary:
    """Order-independent summary: verdict counts, worst metric values, total time."""
    reports = list(reports)
    counts = {v.value: 0 for v in Verdict}
    worst: dict[str, float] = {}
    for r in reports:
        counts[r.verdict.value] += 1
        for name, value in r.metrics.items():
            worst[name] = max(worst.get(name, -math.inf), value)
    ids = Counter(r.claim_id for r in reports)
    return Summary(
        counts=counts,
        worst_metrics=dict(sorted(worst.items())),
        # fsum is exactly rounded, hence independent of summation order
        total_elapsed=math.fsum(r.elapsed for r in reports),
        duplicate_claim_ids=sorted(c for c, n in ids.items() if n > 1),
    )


EXIT_OK, EXIT_RED, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3


def exit_code(reports: Iterable[VerificationReport]) -> int:
    """0 all green; 1 any red; 2 any inconclusive without red; 3 refusals."""
    verdicts = {r.verdict for r in reports}
    if Verdict.RED in verdicts:
        return EXIT_RED
    if Verdict.INCONCLUSIVE in verdicts:
        return EXIT_INCONCLUSIVE
    if Verdict.REFUSED in verdicts:
        return EXIT_USAGE
    return EXIT_OK
