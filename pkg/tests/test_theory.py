import pytest

from plateau.engine.code_builder import WeightDistribution
from plateau.engine.theory import (
    ParityCase,
    compare,
    parity_case,
    predict,
    predict_binary,
    predict_odd_even,
    predict_odd_odd,
    predicted_weight,
    render_table,
    set_cardinalities,
)
from plateau.engine.walsh import evaluate, walsh_fast
from plateau.engine.classifier import classify, detect_plateau
from plateau.exceptions import NotWeaklyRegular, ParityViolation, RangeViolation
from tests.helpers import load


def report_for(name):
    s = walsh_fast(evaluate(load(name)))
    return classify(s, detect_plateau(s))


class TestParityCase:
    def test_cases(self):
        assert parity_case(2, 4, 0) is ParityCase.BINARY_EVEN
        assert parity_case(3, 3, 1) is ParityCase.ODD_EVEN
        assert parity_case(3, 3, 0) is ParityCase.ODD_ODD

    def test_binary_needs_even_sum(self):
        with pytest.raises(ParityViolation):
            parity_case(2, 4, 1)


class TestBinaryTable:
    def test_three_plateaued_over_f32(self):
        predicted = predict_binary(5, 3)
        assert predicted.as_dict() == {0: 1, 8: 3, 16: 59, 24: 1}
        assert predicted.total == 2**6

    def test_bent_over_f16(self):
        assert predict_binary(4, 0).as_dict() == {0: 1, 8: 15, 6: 10, 10: 6}

    def test_parity_and_range(self):
        with pytest.raises(ParityViolation):
            predict_binary(4, 1)
        with pytest.raises(RangeViolation):
            predict_binary(4, 4)


class TestOddEvenTable:
    def test_unbalanced(self):
        predicted = predict_odd_even(3, 3, 1, -1, False)
        assert predicted.as_dict() == {0: 1, 18: 62, 15: 16, 24: 2}
        assert predicted.table_sign == -1
        assert predicted.provenance == "odd p, m+r even, unbalanced dual"

    def test_balanced(self):
        predicted = predict_odd_even(3, 3, 1, -1, True)
        assert predicted.as_dict() == {0: 1, 18: 62, 15: 12, 24: 6}

    @pytest.mark.parametrize("p, m, r", [(3, 4, 0), (3, 4, 2), (5, 2, 0), (5, 4, 2), (7, 2, 0)])
    @pytest.mark.parametrize("epsilon", [1, -1])
    def test_totals(self, p, m, r, epsilon):
        for balanced in (False, True):
            try:
                predicted = predict_odd_even(p, m, r, epsilon, balanced)
            except RangeViolation:
                continue
            assert predicted.total == p ** (m + 1)

    def test_rejects_odd_sum_and_binary(self):
        with pytest.raises(ParityViolation):
            predict_odd_even(3, 3, 0, 1, False)
        with pytest.raises(ParityViolation):
            predict_odd_even(2, 4, 0, 1, False)
        with pytest.raises(RangeViolation):
            predict_odd_even(3, 3, 3, 1, False)


class TestOddOddTable:
    @pytest.mark.parametrize("p, m, r", [(3, 3, 0), (3, 3, 2), (5, 3, 0), (5, 3, 2), (3, 5, 2), (7, 3, 0)])
    @pytest.mark.parametrize("epsilon", [1, -1])
    def test_totals(self, p, m, r, epsilon):
        predicted = predict_odd_odd(p, m, r, epsilon, False)
        assert predicted.total == p ** (m + 1)
        assert predicted.case is ParityCase.ODD_ODD

    def test_square_of_trace_over_f27(self):
        predicted = predict_odd_odd(3, 3, 2, 1, False)
        assert predicted.dual_sign == -1
        assert predicted.as_dict() == {0: 1, 18: 76, 9: 4}

    def test_rejects_even_sum(self):
        with pytest.raises(ParityViolation):
            predict_odd_odd(3, 3, 1, 1, False)
        with pytest.raises(RangeViolation):
            predict_odd_odd(3, 2, 3, 1, False)


class TestPredict:
    def test_dispatches_on_report(self):
        predicted = predict(report_for("ternary_three_weight_f27.json"))
        assert predicted.as_dict() == {0: 1, 15: 16, 18: 62, 24: 2}

    def test_binary_report(self):
        predicted = predict(report_for("binary_3_plateaued_f32.json"))
        assert predicted.case is ParityCase.BINARY_EVEN

    def test_non_weakly_regular_has_no_table(self):
        with pytest.raises(NotWeaklyRegular):
            predict(report_for("non_weakly_regular_2_plateaued_f27.json"))


class TestPredictedWeight:
    def test_three_weight_code_over_f27(self):
        assert predicted_weight(3, 3, 1, -1, 1, True) == 15
        assert predicted_weight(3, 3, 1, -1, 2, True) == 15
        assert predicted_weight(3, 3, 1, -1, 0, True) == 24

    def test_central_weight(self):
        assert predicted_weight(3, 3, 1, -1, 0, False) == 18
        assert predicted_weight(3, 3, 1, -1, 1, True, in_support=False) == 18
        assert predicted_weight(3, 3, 0, 1, 0, True) == 18

    def test_binary(self):
        assert predicted_weight(2, 5, 3, None, 0, True) == 8
        assert predicted_weight(2, 5, 3, None, 1, True) == 24


def test_set_cardinalities():
    assert set_cardinalities(3, 3, 1) == (36, 18)
    assert set_cardinalities(3, 3, 0)[0] == 0


class TestCompare:
    def test_match(self):
        predicted = predict_odd_even(3, 3, 1, -1, False)
        empirical = WeightDistribution.from_mapping({0: 1, 15: 16, 18: 62, 24: 2})
        assert compare(predicted, empirical).matches

    def test_structured_diff(self, caplog):
        predicted = predict_odd_even(3, 3, 1, -1, False)
        empirical = WeightDistribution.from_mapping({0: 1, 15: 12, 18: 62, 21: 6})
        with caplog.at_level("WARNING"):
            diff = compare(predicted, empirical)
        assert not diff.matches
        assert diff.missing == ((24, 2),)
        assert diff.extra == ((21, 6),)
        assert diff.mismatched == ((15, 16, 12),)
        assert "Distribution mismatch" in caplog.text


def test_render_table():
    text = render_table(predict_binary(5, 3))
    lines = text.splitlines()
    assert lines[0].startswith("Hamming weight w")
    assert lines[-1].split("|")[1].strip() == "64"
    assert any(line.split("|")[0].strip() == "24" for line in lines[2:])
