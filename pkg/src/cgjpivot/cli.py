"""Command-line interface: ``cgjpivot {solve,verify,fixtures,bench,gen}``.

Exit codes: 0 optimal (or every fixture passes), 1 a fixture failed,
2 no solution, 3 anomaly or iteration limit, 4 bad input, 5 the solver
disagrees with the oracle.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from .harness import check_against_oracle, run_all_fixtures, run_random_batch
from .lp_model import InstanceError, dump_instance, format_number, load_instance, random_instance
from .solver import ANOMALY, ITERATION_LIMIT, NO_SOLUTION, OPTIMAL, Outcome, SolverConfig, solve, write_trace

EXIT_OK = 0
EXIT_FIXTURE_FAIL = 1
EXIT_NO_SOLUTION = 2
EXIT_ANOMALY = 3
EXIT_INPUT = 4
EXIT_DISAGREE = 5

_OUTCOME_EXIT = {
    OPTIMAL: EXIT_OK,
    NO_SOLUTION: EXIT_NO_SOLUTION,
    ANOMALY: EXIT_ANOMALY,
    ITERATION_LIMIT: EXIT_ANOMALY,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=("rational", "float64"), default="rational")
    common.add_argument("--epsilon", type=float, default=None, help="zero tolerance in float64 mode (default 1e-9)")
    common.add_argument("--adjust", choices=("direct", "positivize"), default="direct")
    common.add_argument("--cap-mult", type=int, default=4, help="iteration cap is (m+n) times this")
    common.add_argument("--trace", metavar="PATH", help="write the run trace (or campaign report) as JSON")
    common.add_argument("--snapshots", choices=("none", "q", "full"), default="q")
    common.add_argument("--output", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(prog="cgjpivot", description="Complementary Gauss-Jordan pivoting LP solver")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (("solve", "solve one instance"), ("verify", "solve and compare with the simplex oracle")):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--input", required=True, metavar="PATH")

    sub.add_parser("fixtures", parents=[common], help="run the bundled example fixtures")

    bench = sub.add_parser("bench", parents=[common], help="random solver-vs-oracle campaign")
    bench.add_argument("--count", type=int, default=100)
    bench.add_argument("--seed", type=int, default=42)
    bench.add_argument("--m", type=int, default=5, help="largest row count (rows drawn from 1..m)")
    bench.add_argument("--n", type=int, default=5, help="largest column count (columns drawn from 1..n)")

    gen = sub.add_parser("gen", help="write a random instance as JSON")
    gen.add_argument("--seed", type=int, default=42)
    gen.add_argument("--m", type=int, default=3)
    gen.add_argument("--n", type=int, default=3)
    gen.add_argument("--output", choices=("text", "json"), default="json")
    gen.add_argument("--input", metavar="PATH", help="destination file (stdout if omitted)")
    return parser


def config_from_args(args: argparse.Namespace) -> SolverConfig:
    # rational mode is exact; any epsilon given is ignored
    epsilon = 0.0 if args.mode == "rational" else (args.epsilon if args.epsilon is not None else 1e-9)
    return SolverConfig(
        mode=args.mode,
        epsilon=epsilon,
        adjust=args.adjust,
        cap_multiplier=args.cap_mult,
        snapshots=args.snapshots,
    )


def _six(value) -> str:
    return f"{float(value):.6g}"


def _result_json(outcome: Outcome, trace_path: Optional[str]) -> dict:
    sol = outcome.solution
    return {
        "outcome": outcome.kind,
        "x": None if sol is None else [format_number(v) for v in sol.x],
        "y": None if sol is None else [format_number(v) for v in sol.y],
        "objective": None if sol is None else format_number(sol.objective),
        "iterations": outcome.iterations,
        "trace_path": trace_path,
    }


def _result_text(outcome: Outcome, trace_path: Optional[str]) -> list[str]:
    lines = [f"outcome: {outcome.kind}"]
    sol = outcome.solution
    if sol is not None:
        lines.append("x = (" + ", ".join(_six(v) for v in sol.x) + ")")
        lines.append("y = (" + ", ".join(_six(v) for v in sol.y) + ")")
        lines.append(f"objective = {_six(sol.objective)}")
    lines.append(f"iterations: {outcome.iterations}")
    if outcome.anomaly_detail:
        lines.append(f"detail: {outcome.anomaly_detail}")
    if trace_path:
        lines.append(f"trace: {trace_path}")
    return lines


def _solve_cmd(args, config: SolverConfig, verify: bool) -> int:
    instance = load_instance(args.input)
    outcome, trace = solve(instance, config)
    if args.trace:
        write_trace(args.trace, trace, outcome)
    code = _OUTCOME_EXIT[outcome.kind]
    verdict = oracle_kind = None
    if verify:
        if config.mode == "rational":
            verdict, oracle_kind = check_against_oracle(instance, outcome)
        else:
            verdict, oracle_kind = _float_verdict(instance, outcome)
        if verdict in ("value", "kind"):
            code = EXIT_DISAGREE
    if args.output == "json":
        payload = _result_json(outcome, args.trace)
        if verify:
            payload["oracle"] = oracle_kind
            payload["agreement"] = verdict
        print(json.dumps(payload, indent=2))
    else:
        lines = _result_text(outcome, args.trace)
        if verify:
            lines.append(f"oracle: {oracle_kind} ({verdict})")
        print("\n".join(lines))
    return code


def _float_verdict(instance, outcome: Outcome):
    """Oracle comparison for float64 runs: objectives agree within 1e-6 relative."""
    from .oracle import INFEASIBLE, OPTIMAL as REF_OPTIMAL, UNBOUNDED, simplex_solve

    ref = simplex_solve(instance)
    if outcome.kind == OPTIMAL:
        if ref.kind != REF_OPTIMAL:
            return "kind", ref.kind
        scale = max(1.0, abs(float(ref.value)))
        return ("agree" if abs(float(outcome.solution.objective) - float(ref.value)) <= 1e-6 * scale else "value"), ref.kind
    if outcome.kind == NO_SOLUTION:
        return ("agree" if ref.kind in (INFEASIBLE, UNBOUNDED) else "kind"), ref.kind
    return "anomaly", ref.kind


def _fixtures_cmd(args, config: SolverConfig) -> int:
    reports = run_all_fixtures(config)
    if args.output == "json":
        print(json.dumps([r.summary() for r in reports], indent=2))
    else:
        print(f"{'fixture':8} {'kind':13} {'iters':>5}  {'pivots':6} {'x':4} {'y':4} {'cert':5} result")
        for r in reports:
            s = r.summary()
            flags = [_mark(s[k]) for k in ("pivots_ok", "x_ok", "y_ok", "certificate_ok")]
            print(
                f"{r.id:8} {s['kind']:13} {s['iterations']:>5}  {flags[0]:6} {flags[1]:4} {flags[2]:4} {flags[3]:5} "
                + ("PASS" if r.passed else "FAIL")
            )
    if args.trace:
        Path(args.trace).write_text(
            json.dumps({r.id: r.trace.to_json(r.outcome) for r in reports}, indent=2) + "\n"
        )
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FIXTURE_FAIL


def _mark(flag) -> str:
    return "-" if flag is None else ("ok" if flag else "BAD")


def _bench_cmd(args, config: SolverConfig) -> int:
    if args.count < 0 or args.m < 1 or args.n < 1:
        raise InstanceError(["--count must be >= 0 and --m, --n must be >= 1"])
    start = time.perf_counter()
    report = run_random_batch(args.count, (1, args.m), (1, args.n), seed=args.seed, config=config)
    elapsed = time.perf_counter() - start
    if args.trace:
        Path(args.trace).write_text(json.dumps(report.to_json(), indent=2, default=str) + "\n")
    if args.output == "json":
        payload = report.to_json(include_traces=False)
        payload["seconds"] = round(elapsed, 3)
        print(json.dumps(payload, indent=2, default=str))
    else:
        print(f"runs {report.runs}  agreements {report.agreements}  disagreements {report.disagreements}")
        print(f"anomalies {len(report.anomalies)}  bound violations {len(report.bound_violations)}")
        print("outcomes " + ", ".join(f"{k}={v}" for k, v in sorted(report.kinds.items())))
        for entry in report.value_mismatches + report.kind_mismatches:
            print(f"  disagreement seed={entry['seed']} solver={entry['solver']} oracle={entry['oracle']}")
        print(f"{elapsed:.2f} s")
    return EXIT_DISAGREE if report.disagreements else EXIT_OK


def _gen_cmd(args) -> int:
    if args.m < 1 or args.n < 1:
        raise InstanceError(["--m and --n must be >= 1"])
    inst = random_instance(args.m, args.n, args.seed)
    text = dump_instance(inst, args.input)
    if args.input is None:
        print(text)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags, which collides with the no-solution code
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        if args.command == "gen":
            return _gen_cmd(args)
        config = config_from_args(args)
        if args.command in ("solve", "verify"):
            return _solve_cmd(args, config, verify=args.command == "verify")
        if args.command == "fixtures":
            return _fixtures_cmd(args, config)
        return _bench_cmd(args, config)
    except InstanceError as exc:
        print(f"cgjpivot: invalid instance: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, ValueError) as exc:
        print(f"cgjpivot: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
