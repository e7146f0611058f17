import json

import pytest
from hypothesis import given, settings, strategies as st

from cgjpivot.harness import get_fixture
from cgjpivot.lp_model import random_instance, validate
from cgjpivot.pivot_rules import MAJOR, MINOR
from cgjpivot.solver import (
    ITERATION_LIMIT,
    NO_SOLUTION,
    OPTIMAL,
    SolverConfig,
    iteration_cap,
    replay,
    solve,
    write_trace,
)


def test_small_example_end_to_end(sec2):
    outcome, trace = solve(sec2)
    assert outcome.kind == OPTIMAL and outcome.iterations == 2
    assert outcome.solution.x == (5, 5) and outcome.solution.y == (1, 2)
    assert outcome.solution.objective == 0
    assert [(e.phase, e.column) for e in trace.pivots()] == [(MINOR, 4), (MAJOR, 1), (MINOR, 2), (MAJOR, 3)]
    assert outcome.tableau.q == [1, 2, 5, 5, 0]


def test_example4_no_solution():
    outcome, trace = solve(get_fixture("ex4").instance)
    assert outcome.kind == NO_SOLUTION and outcome.iterations == 1
    assert trace.columns_by_iteration() == [(4, None)]


def test_example2_degenerate():
    outcome, _ = solve(get_fixture("ex2").instance)
    assert outcome.solution.x == (0, 0, 10000) and outcome.solution.y == (0, 0, 1)
    assert outcome.iterations == 1


def test_optimal_at_initialization():
    inst = validate({"c": [-1, -2], "A": [[1, 1]], "b": [3]})
    outcome, trace = solve(inst)
    assert outcome.kind == OPTIMAL and outcome.iterations == 0
    assert trace.stop_point == "init" and trace.events == []


def test_iteration_cap_arithmetic(sec2):
    assert iteration_cap(sec2, SolverConfig(cap_multiplier=1)) == 4
    assert iteration_cap(sec2) == 16


def test_fixtures_within_bound(fixtures):
    for fx in fixtures.values():
        outcome, trace = solve(fx.instance)
        assert outcome.iterations <= fx.instance.m + fx.instance.n, fx.id
        assert not trace.bound_violation
    assert solve(fixtures["ex9"].instance)[0].iterations == 5


def test_bound_violation_is_flagged_not_fatal():
    inst = get_fixture("ex9").instance
    outcome, trace = solve(inst, _bound=2)
    assert trace.bound_violation
    assert outcome.kind == OPTIMAL


def test_iteration_limit():
    outcome, _ = solve(get_fixture("ex9").instance, _cap=2)
    assert outcome.kind == ITERATION_LIMIT and outcome.iterations == 2


def test_stop_point_placement(fixtures):
    for fx in fixtures.values():
        outcome, trace = solve(fx.instance)
        if outcome.kind == OPTIMAL:
            assert trace.stop_point in ("init", MAJOR)
            assert not trace.events or trace.events[-1].phase == MAJOR
        elif outcome.kind == NO_SOLUTION:
            assert trace.stop_point == MINOR and trace.events[-1].phase == MINOR


@settings(max_examples=40, deadline=None)
@given(m=st.integers(1, 4), n=st.integers(1, 4), seed=st.integers(0, 2**40))
def test_stop_point_placement_random(m, n, seed):
    outcome, trace = solve(random_instance(m, n, seed))
    if outcome.kind == OPTIMAL:
        assert trace.stop_point in ("init", MAJOR)
    elif outcome.kind == NO_SOLUTION:
        assert trace.stop_point == MINOR


def test_replay_bit_exact(fixtures):
    for fx in fixtures.values():
        outcome, trace = solve(fx.instance)
        assert replay(fx.instance, trace.events) == outcome.tableau, fx.id


def test_replay_float_mode(fixtures):
    cfg = SolverConfig.float64()
    for fx in fixtures.values():
        outcome, trace = solve(fx.instance, cfg)
        again = replay(fx.instance, trace.events, cfg)
        assert (again.entries == outcome.tableau.entries).all(), fx.id


def test_trace_file(tmp_path, sec2):
    outcome, trace = solve(sec2, SolverConfig(snapshots="full"))
    path = tmp_path / "trace.json"
    write_trace(path, trace, outcome)
    data = json.loads(path.read_text())
    assert data["outcome"]["kind"] == OPTIMAL
    assert [e["column"] for e in data["events"]] == [4, 1, 2, 3]
    assert data["events"][-1]["snapshot"]["rows"][-1][-1] == "0"


def test_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(adjust="sideways")
    with pytest.raises(ValueError):
        SolverConfig(cap_multiplier=0)
    assert SolverConfig.float64().arithmetic.epsilon == 1e-9


def test_positivize_policy_on_fixtures(fixtures):
    # the alternative adjustment still certifies every fixture, but only the
    # default one reproduces the recorded pivot table of ex8
    cfg = SolverConfig(adjust="positivize")
    diverging = []
    for fx in fixtures.values():
        outcome, trace = solve(fx.instance, cfg)
        assert outcome.kind == fx.expected_kind, fx.id
        if outcome.kind == OPTIMAL:
            assert outcome.certificate.passed
        if trace.columns_by_iteration() != list(fx.expected_pivots):
            diverging.append(fx.id)
    assert diverging == ["ex8"]
