"""Main loop: initialize, check stops, alternate MinorP and MajorP pivots."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from .certify import CertificateReport, Solution, check_certificate, extract_solution
from .eq_builder import build_eq, initialize
from .lp_model import LpInstance, format_number
from .pivot_rules import (
    MAJOR,
    MINOR,
    PivotSelection,
    SelectionError,
    SelectionHistory,
    apply_selection,
    select_majorp,
    select_minorp,
)
from .tableau import ArithmeticMode, InvariantBreach, Tableau, ZeroPivotError

__all__ = [
    "OPTIMAL",
    "NO_SOLUTION",
    "ANOMALY",
    "ITERATION_LIMIT",
    "NEGATE",
    "SolverConfig",
    "TraceEvent",
    "Trace",
    "Outcome",
    "iteration_cap",
    "solve",
    "replay",
]

OPTIMAL = "Optimal"
NO_SOLUTION = "NoSolutionEq"
ANOMALY = "Anomaly"
ITERATION_LIMIT = "IterationLimit"
NEGATE = "Negate"


@dataclass(frozen=True)
class SolverConfig:
    mode: str = "rational"
    epsilon: float = 0.0
    adjust: str = "direct"
    cap_multiplier: int = 4
    snapshots: str = "q"

    def __post_init__(self):
        if self.adjust not in ("direct", "positivize"):
            raise ValueError(f"unknown adjustment policy {self.adjust!r}")
        if self.snapshots not in ("none", "q", "full"):
            raise ValueError(f"unknown snapshot level {self.snapshots!r}")
        if self.cap_multiplier < 1:
            raise ValueError("cap multiplier must be >= 1")
        self.arithmetic  # validates mode/epsilon

    @property
    def arithmetic(self) -> ArithmeticMode:
        if self.mode == "rational":
            return ArithmeticMode("rational", 0.0)
        return ArithmeticMode(self.mode, self.epsilon or 1e-9)

    @classmethod
    def float64(cls, epsilon: float = 1e-9, **kw) -> "SolverConfig":
        return cls(mode="float64", epsilon=epsilon, **kw)


@dataclass
class TraceEvent:
    iter: int
    phase: str
    pair: Optional[int] = None
    column: Optional[int] = None
    alpha: Any = None
    proviso: Optional[str] = None
    q: Optional[list] = None
    snapshot: Optional[dict] = None

    def to_json(self) -> dict:
        out = {
            "iter": self.iter,
            "phase": self.phase,
            "pair": self.pair,
            "column": self.column,
            "alpha": None if self.alpha is None else format_number(self.alpha),
            "proviso": self.proviso,
            "q": None if self.q is None else [format_number(v) for v in self.q],
        }
        if self.snapshot is not None:
            out["snapshot"] = self.snapshot
        return out


@dataclass
class Trace:
    instance: str
    events: list[TraceEvent] = field(default_factory=list)
    bound_violation: bool = False
    stop_point: Optional[str] = None  # "init", MinorP or MajorP

    def pivots(self) -> list[TraceEvent]:
        return [e for e in self.events if e.phase in (MINOR, MAJOR)]

    def columns_by_iteration(self) -> list[tuple[Optional[int], Optional[int]]]:
        """``(MinorP column, MajorP column)`` per iteration, ``None`` where absent."""
        rows: dict[int, list] = {}
        for e in self.pivots():
            slot = rows.setdefault(e.iter, [None, None])
            slot[0 if e.phase == MINOR else 1] = e.column
        return [tuple(rows[i]) for i in sorted(rows)]

    def to_json(self, outcome: Optional["Outcome"] = None) -> dict:
        out = {
            "instance": self.instance,
            "events": [e.to_json() for e in self.events],
            "bound_violation": self.bound_violation,
        }
        if outcome is not None:
            out["outcome"] = outcome.to_json()
        return out


@dataclass
class Outcome:
    kind: str
    iterations: int
    solution: Optional[Solution] = None
    certificate: Optional[CertificateReport] = None
    anomaly_detail: Optional[str] = None
    tableau: Optional[Tableau] = None

    def to_json(self) -> dict:
        out: dict[str, Any] = {"kind": self.kind, "iterations": self.iterations}
        if self.solution is not None:
            out.update(self.solution.to_json())
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        if self.anomaly_detail is not None:
            out["anomaly"] = self.anomaly_detail
        return out


def iteration_cap(instance: LpInstance, config: SolverConfig = SolverConfig()) -> int:
    return (instance.m + instance.n) * config.cap_multiplier


def _event(t: Tableau, it: int, phase: str, config: SolverConfig, sel: Optional[PivotSelection] = None) -> TraceEvent:
    ev = TraceEvent(iter=it, phase=phase)
    if sel is not None:
        ev.pair, ev.column, ev.alpha, ev.proviso = sel.pair, sel.column, sel.alpha, sel.proviso
    if config.snapshots != "none":
        ev.q = t.q
    if config.snapshots == "full":
        ev.snapshot = t.to_json()
    return ev


def _finish_optimal(t: Tableau, instance: LpInstance, config: SolverConfig, it: int) -> Outcome:
    sol = extract_solution(t, instance)
    tol = 0.0 if config.mode == "rational" else 1e-6
    cert = check_certificate(instance, sol, tol=tol)
    if not cert.passed:
        return Outcome(ANOMALY, it, sol, cert, "solution state reached but certificate failed", t)
    return Outcome(OPTIMAL, it, sol, cert, tableau=t)


def solve(
    instance: LpInstance,
    config: SolverConfig = SolverConfig(),
    *,
    _cap: Optional[int] = None,
    _bound: Optional[int] = None,
) -> tuple[Outcome, Trace]:
    """Run the algorithm on ``instance``.

    Optimal is only reported right after initialization or after a MajorP
    pivot; NoSolutionEq only right after a MinorP pivot. One iteration is one
    MajorP together with the MinorP preceding it.
    """
    mode = config.arithmetic
    t = initialize(build_eq(instance), mode)
    trace = Trace(instance.name)
    hist = SelectionHistory()
    cap = iteration_cap(instance, config) if _cap is None else _cap
    bound = instance.m + instance.n if _bound is None else _bound
    it = 0

    def anomaly(detail: str) -> tuple[Outcome, Trace]:
        return Outcome(ANOMALY, it, anomaly_detail=detail, tableau=t), trace

    try:
        t.check_pair_basis()
        if t.is_solution_state():
            trace.stop_point = "init"
            return _finish_optimal(t, instance, config, it), trace
        while True:
            if it >= cap:
                return Outcome(ITERATION_LIMIT, it, anomaly_detail=f"iteration cap {cap} reached", tableau=t), trace
            current = it + 1
            if mode.is_zero(t.q_last):
                sel = select_minorp(t, hist, config.adjust)
                apply_selection(t, sel)
                t.check_pair_basis()
                hist.record(sel)
                trace.events.append(_event(t, current, MINOR, config, sel))
                if t.is_no_solution_state():
                    trace.stop_point = MINOR
                    return Outcome(NO_SOLUTION, current, tableau=t), trace
            if mode.is_neg(t.q_last):
                t.negate_last_row()
                trace.events.append(_event(t, current, NEGATE, config))
            sel = select_majorp(t, hist, config.adjust)
            apply_selection(t, sel)
            t.check_pair_basis()
            hist.record(sel)
            it = current
            trace.events.append(_event(t, it, MAJOR, config, sel))
            if it > bound:
                trace.bound_violation = True
            if t.is_solution_state():
                trace.stop_point = MAJOR
                return _finish_optimal(t, instance, config, it), trace
    except SelectionError as exc:
        return anomaly(f"{type(exc).__name__}: {exc}")
    except (InvariantBreach, ZeroPivotError) as exc:
        return anomaly(f"{type(exc).__name__}: {exc}")


def replay(instance: LpInstance, events: list[TraceEvent], config: SolverConfig = SolverConfig()) -> Tableau:
    """Re-apply a recorded event sequence to a fresh initial tableau."""
    t = initialize(build_eq(instance), config.arithmetic)
    for ev in events:
        if ev.phase == NEGATE:
            t.negate_last_row()
            continue
        if ev.alpha is not None:
            t.add_row_multiple(ev.pair, ev.alpha)
        t.gj_pivot(ev.pair, ev.column)
    return t


def write_trace(path: str | Path, trace: Trace, outcome: Outcome) -> None:
    Path(path).write_text(json.dumps(trace.to_json(outcome), indent=2) + "\n")
