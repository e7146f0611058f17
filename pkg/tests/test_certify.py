from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from cgjpivot.certify import Solution, check_certificate, extract_solution, objective_value
from cgjpivot.harness import get_fixture
from cgjpivot.lp_model import random_instance
from cgjpivot.solver import OPTIMAL, SolverConfig, solve
from cgjpivot.tableau import Tableau


def test_small_example_split(sec2):
    outcome, _ = solve(sec2)
    sol = extract_solution(outcome.tableau, sec2)
    assert (sol.y, sol.x, sol.s, sol.t) == ((1, 2), (5, 5), (0, 0), (0, 0))
    assert sol.objective == 0


def test_beale_printed_solution():
    inst = get_fixture("ex3").instance
    outcome, _ = solve(inst)
    x, y = outcome.solution.x, outcome.solution.y
    assert x == (F(1, 25), 0, 1, 0)
    assert y == (0, F(3, 2), F(1, 20))


def test_identity_tableau_zero_q():
    inst = random_instance(1, 1, 3)
    t = Tableau([[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 0, 0, 0]], 2)
    sol = extract_solution(t, inst)
    assert sol.z == (0, 0, 0, 0) and sol.objective == 0


def test_example9_certificate():
    inst = get_fixture("ex9").instance
    sol = Solution.from_xy(inst, (0, 4, 8, 0, 28), (10, 6, 4, 0))
    report = check_certificate(inst, sol)
    assert report.passed and report.duality_gap == 0
    assert sol.objective == 344


def test_example5_certificate_with_tolerance():
    inst = get_fixture("ex5").instance
    sol = Solution.from_xy(inst, (0, 2, 0, 4), (F("0.5556"), 1, F("0.2222")))
    assert sol.objective == 6
    assert check_certificate(inst, sol, tol=1e-3).passed
    assert not check_certificate(inst, sol).passed


def test_example9_perturbed_fails():
    inst = get_fixture("ex9").instance
    sol = Solution.from_xy(inst, (1, 4, 8, 0, 28), (10, 6, 4, 0))
    report = check_certificate(inst, sol)
    assert not report.primal_feasible and not report.passed
    assert report.residuals["primal"] == 1


def test_objective_examples():
    assert objective_value(get_fixture("ex12").instance, (0, 17, 27)) == -10
    assert objective_value(get_fixture("ex12").instance, (0, 0, 0)) == 0
    ex1 = get_fixture("ex1").instance
    value = objective_value(ex1, tuple(F(v) for v in ("0", "5.1601", "53.2015", "31.3653")))
    assert float(value) == pytest.approx(480.79, abs=0.01)
    dual = sum(b * F(y) for b, y in zip(ex1.b, ("6.2147", "0.7062", "0.1130")))
    assert abs(dual - value) < F(1, 100)


def test_objective_dimension_check(sec2):
    with pytest.raises(ValueError):
        objective_value(sec2, (1,))


def test_round_trip_on_fixtures(fixtures):
    for fx in fixtures.values():
        outcome, _ = solve(fx.instance)
        if outcome.kind != OPTIMAL:
            continue
        report = check_certificate(fx.instance, extract_solution(outcome.tableau, fx.instance))
        assert report.passed, fx.id
        assert all(v == 0 for v in report.residuals.values()), fx.id


@settings(max_examples=60, deadline=None)
@given(m=st.integers(1, 5), n=st.integers(1, 5), seed=st.integers(0, 2**40))
def test_strong_duality_on_random_optima(m, n, seed):
    inst = random_instance(m, n, seed)
    outcome, _ = solve(inst)
    if outcome.kind == OPTIMAL:
        sol = outcome.solution
        assert sum(b * y for b, y in zip(inst.b, sol.y)) == sol.objective
        assert all(a * b == 0 for a, b in zip(sol.z, sol.z[m + n:]))
        assert outcome.certificate.passed


def test_float_certificate_uses_tolerance(sec2):
    outcome, _ = solve(sec2, SolverConfig.float64())
    assert outcome.certificate.tol > 0 and outcome.certificate.passed
