import numpy as np
import pytest

from plateau.engine.cyclotomic import CycInt
from plateau.engine.finite_field import make_field
from plateau.engine.walsh import (
    FunctionSpec,
    PAryFunction,
    evaluate,
    inverse_transform,
    is_balanced,
    moment,
    value_distribution,
    walsh_direct,
    walsh_fast,
    walsh_restricted,
)
from plateau.exceptions import FieldMismatch, RangeViolation, SpecParseError
from tests.helpers import gf, load, trace_poly


class TestFunctionSpec:
    def test_exponent_must_be_positive(self):
        field = gf(3, 3)
        with pytest.raises(SpecParseError):
            FunctionSpec(field, ((field.one, 0),))

    def test_coefficients_must_share_the_field(self):
        with pytest.raises(FieldMismatch):
            FunctionSpec(gf(3, 3), ((gf(3, 2).one, 2),))

    def test_describe(self):
        field = gf(3, 3)
        assert trace_poly(field, (0, 2)).describe() == "Tr(x^2)"
        assert trace_poly(field, (1, 2), (7, 4)).describe() == "Tr(ζ^1x^2 + ζ^7x^4)"
        assert trace_poly(field, (None, 2)).describe() == "Tr(0)"


class TestEvaluate:
    def test_matches_pointwise_trace(self):
        field = gf(3, 3)
        spec = trace_poly(field, (1, 2), (7, 4), (7, 3), (1, 13))
        f = evaluate(spec)
        for x in field.elements():
            psi = sum((c * x**e for c, e in spec.terms), field.zero)
            assert f(x) == field.trace(psi)

    def test_zero_maps_to_zero(self):
        assert evaluate(load("regular_1_plateaued_f27.json")).table[0] == 0

    def test_table_is_read_only(self):
        f = evaluate(trace_poly(gf(5, 2), (0, 2)))
        with pytest.raises(ValueError):
            f.table[1] = 0

    def test_table_validation(self):
        field = gf(3, 2)
        with pytest.raises(FieldMismatch):
            PAryFunction(field, np.zeros(8, dtype=np.int64))
        with pytest.raises(RangeViolation):
            PAryFunction(field, np.full(9, 3))


@pytest.mark.parametrize(
    "name",
    [
        "regular_1_plateaued_f27.json",
        "weakly_regular_1_plateaued_f27.json",
        "non_weakly_regular_2_plateaued_f27.json",
        "binary_3_plateaued_f32.json",
        "not_plateaued_f8.json",
        "quadratic_bent_f81.json",
    ],
)
def test_fast_transform_matches_direct(name):
    f = evaluate(load(name))
    assert walsh_fast(f) == walsh_direct(f)


@pytest.mark.parametrize("p, m", [(2, 4), (3, 2), (5, 2), (3, 5)])
def test_fast_transform_and_parseval_on_random_tables(p, m):
    field = gf(p, m)
    rng = np.random.default_rng(p * 100 + m)
    for i in range(100):
        f = PAryFunction(field, rng.integers(0, p, size=field.q))
        s = walsh_fast(f)
        if i < 25:
            assert s == walsh_direct(f)
        assert moment(s, 1) == field.q**2


def test_zero_function_cancels_everywhere_but_zero():
    field = make_field(2, 1, [1, 1])
    s = walsh_fast(PAryFunction(field, np.zeros(2, dtype=np.int64)))
    assert s.values == (CycInt.from_int(2, 2), CycInt.zero(2))
    s = walsh_fast(evaluate(trace_poly(gf(5, 2))))
    assert s.support == (0,)
    assert s[0] == CycInt.from_int(5, 25)


def test_linear_function_has_a_single_peak():
    field = gf(3, 3)
    s = walsh_fast(evaluate(load("linear_f27.json")))
    assert s.support == (field.one.index,)
    assert s[field.one.index] == CycInt.from_int(3, 27)


def test_inverse_transform_recovers_function():
    for name in ("weakly_regular_1_plateaued_f27.json", "binary_3_plateaued_f32.json"):
        f = evaluate(load(name))
        assert inverse_transform(walsh_fast(f)) == f


def test_restricted_transform_over_whole_field_is_plain_transform():
    f = evaluate(trace_poly(gf(5, 2), (3, 2), (1, 6)))
    assert walsh_restricted(f, range(25)) == walsh_direct(f)


class TestStatistics:
    def test_moments(self):
        s = walsh_fast(evaluate(load("regular_1_plateaued_f27.json")))
        assert moment(s, 0) == 27
        assert moment(s, 1) == 27**2
        # nine support points, each |W|^2 = 81
        assert moment(s, 2) == 9 * 81**2
        with pytest.raises(RangeViolation):
            moment(s, -1)

    def test_squared_magnitudes_are_plateaued(self):
        s = walsh_fast(evaluate(load("weakly_regular_1_plateaued_f27.json")))
        assert set(s.squared_magnitudes) == {0, 81}

    def test_balance(self):
        f = evaluate(load("linear_f27.json"))
        assert is_balanced(f).counts == (9, 9, 9)
        assert is_balanced(f).balanced
        at_zero = is_balanced(f, support=[0])
        assert at_zero.counts == (1, 0, 0)
        assert not at_zero.balanced

    def test_value_distribution(self):
        s = walsh_fast(evaluate(load("linear_f27.json")))
        assert value_distribution(s) == {CycInt.zero(3): 26, CycInt.from_int(3, 27): 1}
