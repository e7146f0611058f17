"""Published-example fixtures, Klee-Minty scaling and random solver-vs-oracle campaigns."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any, Optional

from .lp_model import LpInstance, SplitMix64, klee_minty, random_instance, to_fraction, validate
from .oracle import INFEASIBLE, OPTIMAL as ORACLE_OPTIMAL, UNBOUNDED, classify_no_solution, simplex_solve
from .solver import NO_SOLUTION, OPTIMAL, Outcome, SolverConfig, Trace, solve

__all__ = [
    "Fixture",
    "FixtureReport",
    "CampaignReport",
    "fixture_path_bytes",
    "fixture_checksum",
    "load_fixtures",
    "get_fixture",
    "run_fixture",
    "run_all_fixtures",
    "run_klee_minty_scaling",
    "run_random_batch",
    "check_against_oracle",
]

FIXTURE_FILE = "fixtures.json"


@dataclass(frozen=True)
class Fixture:
    id: str
    title: str
    instance: LpInstance
    expected_pivots: tuple[tuple[Optional[int], Optional[int]], ...]
    expected_kind: str
    expected_x: Optional[tuple[Fraction, ...]]
    expected_y: Optional[tuple[Fraction, ...]]
    tolerance: Fraction
    proviso_sensitive: bool = False
    expected_oracle: Optional[str] = None
    printed_x: Optional[tuple[Fraction, ...]] = None
    note: Optional[str] = None

    @property
    def iterations(self) -> int:
        return len(self.expected_pivots)


def fixture_path_bytes() -> bytes:
    return resources.files("cgjpivot").joinpath("data").joinpath(FIXTURE_FILE).read_bytes()


def fixture_checksum() -> str:
    return hashlib.sha256(fixture_path_bytes()).hexdigest()


def _vec(raw):
    return None if raw is None else tuple(to_fraction(v) for v in raw)


def load_fixtures() -> list[Fixture]:
    out = []
    for raw in json.loads(fixture_path_bytes()):
        out.append(
            Fixture(
                id=raw["id"],
                title=raw["title"],
                instance=validate(raw["instance"]),
                expected_pivots=tuple(tuple(p) for p in raw["expected_pivots"]),
                expected_kind=raw["expected_kind"],
                expected_x=_vec(raw.get("expected_x")),
                expected_y=_vec(raw.get("expected_y")),
                tolerance=to_fraction(raw["tolerance"]),
                proviso_sensitive=raw.get("proviso_sensitive", False),
                expected_oracle=raw.get("expected_oracle"),
                printed_x=_vec(raw.get("printed_x")),
                note=raw.get("note"),
            )
        )
    return out


def get_fixture(fid: str) -> Fixture:
    for fx in load_fixtures():
        if fx.id == fid:
            return fx
    raise KeyError(f"unknown fixture {fid!r}")


def _close(actual, expected, tol) -> bool:
    if actual is None or expected is None or len(actual) != len(expected):
        return False
    return all(abs(Fraction(a) - e) <= tol for a, e in zip(actual, expected))


@dataclass
class FixtureReport:
    id: str
    kind: str
    kind_ok: bool
    pivots: list
    pivots_ok: bool
    x_ok: Optional[bool]
    y_ok: Optional[bool]
    certificate_ok: Optional[bool]
    oracle: str
    oracle_ok: bool
    iterations: int
    within_bound: bool
    outcome: Outcome = field(repr=False)
    trace: Trace = field(repr=False)

    @property
    def passed(self) -> bool:
        checks = [self.kind_ok, self.pivots_ok, self.oracle_ok, self.within_bound]
        checks += [c for c in (self.x_ok, self.y_ok, self.certificate_ok) if c is not None]
        return all(checks)

    def summary(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "kind": self.kind,
            "pivots": [list(p) for p in self.pivots],
            "iterations": self.iterations,
            "kind_ok": self.kind_ok,
            "pivots_ok": self.pivots_ok,
            "x_ok": self.x_ok,
            "y_ok": self.y_ok,
            "certificate_ok": self.certificate_ok,
            "oracle": self.oracle,
            "oracle_ok": self.oracle_ok,
            "within_bound": self.within_bound,
            "passed": self.passed,
        }


def run_fixture(fid: str | Fixture, config: SolverConfig = SolverConfig()) -> FixtureReport:
    fx = fid if isinstance(fid, Fixture) else get_fixture(fid)
    outcome, trace = solve(fx.instance, config)
    pivots = trace.columns_by_iteration()
    x_ok = y_ok = cert_ok = None
    if fx.expected_kind == OPTIMAL:
        sol = outcome.solution
        x_ok = sol is not None and _close(sol.x, fx.expected_x, fx.tolerance)
        y_ok = sol is not None and _close(sol.y, fx.expected_y, fx.tolerance)
        cert_ok = outcome.certificate is not None and outcome.certificate.passed
    ref = simplex_solve(fx.instance)
    if outcome.kind == OPTIMAL:
        oracle = ref.kind
        got = outcome.solution.objective
        if config.mode == "rational":
            oracle_ok = ref.kind == ORACLE_OPTIMAL and got == ref.value
        else:
            oracle_ok = ref.kind == ORACLE_OPTIMAL and abs(got - float(ref.value)) <= 1e-6 * max(1, abs(float(ref.value)))
    elif outcome.kind == NO_SOLUTION:
        oracle = classify_no_solution(fx.instance)
        oracle_ok = oracle in (INFEASIBLE, UNBOUNDED)
        if fx.expected_oracle is not None:
            oracle_ok = oracle_ok and oracle == fx.expected_oracle
    else:
        oracle, oracle_ok = ref.kind, False
    return FixtureReport(
        id=fx.id,
        kind=outcome.kind,
        kind_ok=outcome.kind == fx.expected_kind,
        pivots=pivots,
        pivots_ok=pivots == list(fx.expected_pivots),
        x_ok=x_ok,
        y_ok=y_ok,
        certificate_ok=cert_ok,
        oracle=oracle,
        oracle_ok=oracle_ok,
        iterations=outcome.iterations,
        within_bound=outcome.iterations <= fx.instance.m + fx.instance.n and not trace.bound_violation,
        outcome=outcome,
        trace=trace,
    )


def run_all_fixtures(config: SolverConfig = SolverConfig()) -> list[FixtureReport]:
    return [run_fixture(fx, config) for fx in load_fixtures()]


# -- Klee-Minty scaling -------------------------------------------------


@dataclass
class KleeMintyRow:
    n: int
    kind: str
    iterations: int
    pivots: list
    objective: Optional[Fraction]
    oracle_value: Optional[Fraction]

    @property
    def claim_holds(self) -> bool:
        """One iteration, MinorP on column 2n, MajorP on column n, optimum 100**(n-1)."""
        return (
            self.kind == OPTIMAL
            and self.iterations == 1
            and self.pivots == [(2 * self.n, self.n)]
            and self.objective == 100 ** (self.n - 1)
            and self.oracle_value == self.objective
        )


def run_klee_minty_scaling(n_max: int, config: SolverConfig = SolverConfig(), oracle: bool = True) -> list[KleeMintyRow]:
    rows = []
    for n in range(1, n_max + 1):
        inst = klee_minty(n)
        outcome, trace = solve(inst, config)
        obj = outcome.solution.objective if outcome.solution is not None else None
        ref = simplex_solve(inst).value if oracle else None
        rows.append(KleeMintyRow(n, outcome.kind, outcome.iterations, trace.columns_by_iteration(), obj, ref))
    return rows


# -- random campaign ----------------------------------------------------


@dataclass
class CampaignReport:
    runs: int = 0
    agreements: int = 0
    value_mismatches: list = field(default_factory=list)
    kind_mismatches: list = field(default_factory=list)
    anomalies: list = field(default_factory=list)
    bound_violations: list = field(default_factory=list)
    kinds: dict = field(default_factory=dict)

    @property
    def disagreements(self) -> int:
        return len(self.value_mismatches) + len(self.kind_mismatches)

    def accounting_ok(self) -> bool:
        return self.runs == self.agreements + self.disagreements + len(self.anomalies)

    def merge(self, other: "CampaignReport") -> "CampaignReport":
        out = CampaignReport(
            runs=self.runs + other.runs,
            agreements=self.agreements + other.agreements,
            value_mismatches=sorted(self.value_mismatches + other.value_mismatches, key=_seed_key),
            kind_mismatches=sorted(self.kind_mismatches + other.kind_mismatches, key=_seed_key),
            anomalies=sorted(self.anomalies + other.anomalies, key=_seed_key),
            bound_violations=sorted(self.bound_violations + other.bound_violations, key=_seed_key),
        )
        for src in (self.kinds, other.kinds):
            for k, v in src.items():
                out.kinds[k] = out.kinds.get(k, 0) + v
        return out

    def to_json(self, include_traces: bool = True) -> dict:
        def strip(entries):
            if include_traces:
                return entries
            return [{k: v for k, v in e.items() if k != "trace"} for e in entries]

        return {
            "runs": self.runs,
            "agreements": self.agreements,
            "value_mismatches": strip(self.value_mismatches),
            "kind_mismatches": strip(self.kind_mismatches),
            "anomalies": strip(self.anomalies),
            "bound_violations": strip(self.bound_violations),
            "kinds": self.kinds,
        }


def _seed_key(entry: dict):
    seed = entry["seed"]
    return (1, 0, seed) if isinstance(seed, str) else (0, seed, "")


def check_against_oracle(instance: LpInstance, outcome: Outcome) -> tuple[str, Optional[str]]:
    """Classify one solver outcome: ``("agree" | "value" | "kind" | "anomaly", oracle kind)``."""
    ref = simplex_solve(instance)
    if outcome.kind == OPTIMAL:
        if ref.kind != ORACLE_OPTIMAL:
            return "kind", ref.kind
        return ("agree" if outcome.solution.objective == ref.value else "value"), ref.kind
    if outcome.kind == NO_SOLUTION:
        return ("agree" if ref.kind in (INFEASIBLE, UNBOUNDED) else "kind"), ref.kind
    return "anomaly", ref.kind


def _record(report: CampaignReport, seed, instance: LpInstance, outcome: Outcome, trace: Trace, config: SolverConfig):
    verdict, ref_kind = check_against_oracle(instance, outcome)
    report.runs += 1
    report.kinds[outcome.kind] = report.kinds.get(outcome.kind, 0) + 1
    entry = {
        "seed": seed,
        "m": instance.m,
        "n": instance.n,
        "name": instance.name,
        "solver": outcome.kind,
        "oracle": ref_kind,
        "iterations": outcome.iterations,
    }
    full = dict(entry, detail=outcome.anomaly_detail, trace=trace.to_json(outcome))
    if verdict == "agree":
        report.agreements += 1
    elif verdict == "value":
        report.value_mismatches.append(full)
    elif verdict == "kind":
        report.kind_mismatches.append(full)
    else:
        report.anomalies.append(full)
    if trace.bound_violation:
        report.bound_violations.append(entry)


def run_random_batch(
    count: int,
    m_range: tuple[int, int] = (1, 5),
    n_range: tuple[int, int] = (1, 5),
    seed: int = 42,
    entry_range: tuple[int, int] = (-9, 9),
    config: SolverConfig = SolverConfig(),
    extra: Optional[list[LpInstance]] = None,
) -> CampaignReport:
    """Solve ``count`` random instances and compare each against the simplex oracle.

    Instance ``i`` is ``random_instance(m_i, n_i, seed_i)`` where ``m_i``,
    ``n_i`` and ``seed_i`` are drawn from a SplitMix64 stream seeded with
    ``seed``; the per-instance seed is enough to regenerate it. ``extra``
    instances are appended with string seeds ``"extra-<k>"``.
    """
    rng = SplitMix64(seed)
    report = CampaignReport()
    for _ in range(count):
        m = rng.randint(*m_range)
        n = rng.randint(*n_range)
        inst_seed = rng.next_u64()
        inst = random_instance(m, n, inst_seed, entry_range)
        outcome, trace = solve(inst, config)
        _record(report, inst_seed, inst, outcome, trace, config)
    for k, inst in enumerate(extra or []):
        outcome, trace = solve(inst, config)
        _record(report, f"extra-{k}", inst, outcome, trace, config)
    return report
