from fractions import Fraction as F

import pytest

from cgjpivot.eq_builder import build_eq, initialize
from cgjpivot.harness import get_fixture, load_fixtures
from cgjpivot.lp_model import validate
from cgjpivot.solver import NEGATE


@pytest.fixture(scope="session")
def fixtures():
    return {fx.id: fx for fx in load_fixtures()}


@pytest.fixture
def sec2():
    return get_fixture("sec2").instance


@pytest.fixture
def sec2_init(sec2):
    return initialize(build_eq(sec2))


def infeasible_1d():
    return validate({"name": "x<=1,x>=2", "c": [1], "A": [[1], [-1]], "b": [1, -2]})


def as_fractions(rows):
    return [[F(v) for v in row] for row in rows]


def replay_checked(instance, events, mode=None):
    """Replay ``events`` one at a time, asserting the pair-basis invariant after each pivot."""
    t = initialize(build_eq(instance)) if mode is None else initialize(build_eq(instance), mode)
    t.check_pair_basis()
    for ev in events:
        if ev.phase == NEGATE:
            t.negate_last_row()
            continue
        before = t.basic_column(ev.pair)
        assert ev.column == t.partner(before), "selected column must be the non-basic pair member"
        if ev.alpha is not None:
            t.add_row_multiple(ev.pair, ev.alpha)
        t.gj_pivot(ev.pair, ev.column)
        t.check_pair_basis()
        assert t.basic_column(ev.pair) == ev.column
    return t
