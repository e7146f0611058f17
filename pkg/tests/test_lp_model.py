import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from cgjpivot.lp_model import (
    InstanceError,
    SplitMix64,
    dump_instance,
    encode_equalities,
    instance_to_dict,
    klee_minty,
    load_instance,
    random_instance,
    to_fraction,
    validate,
)
from cgjpivot.oracle import simplex_solve


def test_validate_small_example():
    inst = validate({"c": [-1, 1], "A": [[1, 1], [-1, 0]], "b": [10, -5]})
    assert (inst.m, inst.n) == (2, 2)
    assert inst.b == (F(10), F(-5))


def test_dimension_mismatch_reported():
    with pytest.raises(InstanceError) as err:
        validate({"c": [1, 1], "A": [[1, 1], [1, 1]], "b": [1, 2, 3]})
    assert any("b" in p for p in err.value.problems)


def test_empty_matrix_rejected():
    with pytest.raises(InstanceError):
        validate({"c": [1], "A": [], "b": []})


def test_every_problem_listed():
    with pytest.raises(InstanceError) as err:
        validate({"c": ["x"], "A": [[1, 2]], "b": [1], "extra": 1})
    assert len(err.value.problems) >= 3


def test_decimal_inputs_are_exact():
    assert to_fraction("0.04") == F(1, 25)
    assert to_fraction(0.83) == F(83, 100)
    assert to_fraction("5/6") == F(5, 6)
    with pytest.raises(TypeError):
        to_fraction(True)
    with pytest.raises(ValueError):
        to_fraction(float("nan"))


def test_encode_equalities_two_equations():
    inst = encode_equalities([], [((1, 3, 1, 0), 9), ((4, -2, 0, 1), 10)], (7, -3, 1, 2))
    assert inst.A == (
        (1, 3, 1, 0),
        (-1, -3, -1, 0),
        (4, -2, 0, 1),
        (-4, 2, 0, -1),
    )
    assert inst.b == (9, -9, 10, -10)


def test_encode_without_equalities_is_identity():
    base = validate({"c": [1, 2], "A": [[1, 1]], "b": [4]})
    out = encode_equalities([(base.A[0], base.b[0])], [], base.c)
    assert (out.A, out.b, out.c) == (base.A, base.b, base.c)


def test_single_equality_optimum():
    inst = encode_equalities([], [((1,), 1)], (1,))
    assert inst.A == ((1,), (-1,)) and inst.b == (1, -1)
    ref = simplex_solve(inst)
    assert ref.value == 1 and ref.x == (1,)


@settings(max_examples=60, deadline=None)
@given(
    rows=st.lists(st.tuples(st.lists(st.integers(-4, 4), min_size=2, max_size=2), st.integers(-5, 5)), max_size=2),
    eqs=st.lists(st.tuples(st.lists(st.integers(-4, 4), min_size=2, max_size=2), st.integers(-5, 5)), min_size=1, max_size=2),
    point=st.lists(st.integers(-3, 3), min_size=2, max_size=2),
)
def test_encoding_preserves_feasible_set(rows, eqs, point):
    inst = encode_equalities(rows, eqs, (1, 1))
    dot = lambda a, x: sum(F(u) * v for u, v in zip(a, x))
    original = all(dot(a, point) <= r for a, r in rows) and all(dot(a, point) == r for a, r in eqs)
    encoded = all(dot(a, point) <= r for a, r in zip(inst.A, inst.b))
    assert original == encoded


def test_klee_minty_three():
    km = klee_minty(3)
    assert km.c == (100, 10, 1)
    assert km.A == ((1, 0, 0), (20, 1, 0), (200, 20, 1))
    assert km.b == (1, 100, 10000)


def test_klee_minty_four_and_one():
    assert klee_minty(4).b == (1, 100, 10000, 1000000)
    assert klee_minty(4).A[3] == (2000, 200, 20, 1)
    one = klee_minty(1)
    assert (one.c, one.A, one.b) == ((1,), ((1,),), (1,))
    with pytest.raises(InstanceError):
        klee_minty(0)


def test_splitmix_reference_vector():
    # first output for seed 0 from the reference implementation
    assert SplitMix64(0).next_u64() == 0xE220A8397B1DCDAF


def test_random_instance_deterministic():
    assert random_instance(2, 2, 1, (-5, 5)) == random_instance(2, 2, 1, (-5, 5))


def test_random_instance_range():
    inst = random_instance(3, 4, 7, (-9, 9))
    values = [v for row in inst.A for v in row] + list(inst.b) + list(inst.c)
    assert all(-9 <= v <= 9 for v in values)
    assert (inst.m, inst.n) == (3, 4)


def test_random_instance_pinned_seeds():
    one = random_instance(2, 2, 1, (-5, 5))
    two = random_instance(2, 2, 2, (-5, 5))
    assert (one.A, one.b, one.c) != (two.A, two.b, two.c)
    assert instance_to_dict(one) == {
        "name": "random-2x2-1",
        "c": ["-5", "-2"],
        "A": [["4", "3"], ["-5", "2"]],
        "b": ["2", "-4"],
    }


def test_json_round_trip(tmp_path):
    inst = validate({"name": "t", "c": ["1/3", 2], "A": [[0.5, "-7"]], "b": [1]})
    path = tmp_path / "inst.json"
    dump_instance(inst, path)
    assert load_instance(path) == inst
    assert json.loads(path.read_text())["c"] == ["1/3", "2"]


def test_bad_json_is_instance_error(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(InstanceError):
        load_instance(path)
