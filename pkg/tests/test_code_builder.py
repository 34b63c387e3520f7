import itertools

import numpy as np
import pytest

from plateau.engine.code_builder import (
    WeightDistribution,
    build_code,
    codewords,
    distribution_via_walsh,
    enumeration_cost,
    enumerator_string,
    format_codeword,
    min_max_weights,
    pair_weights,
    rank_mod_p,
    walsh_weights,
    weight_distribution,
    weight_via_walsh,
)
from plateau.engine.walsh import evaluate, walsh_fast
from plateau.exceptions import AnalysisError, BudgetExceeded
from tests.helpers import gf, load, trace_poly


@pytest.fixture(scope="module")
def binary_code():
    return build_code(load("binary_3_plateaued_f32.json"))


@pytest.fixture(scope="module")
def ternary_code():
    return build_code(load("ternary_three_weight_f27.json"))


def test_rank_mod_p():
    assert rank_mod_p(np.array([[1, 2], [2, 1]]), 3) == 1
    assert rank_mod_p(np.array([[1, 2], [2, 1]]), 5) == 2
    assert rank_mod_p(np.eye(4, dtype=int), 2) == 4
    assert rank_mod_p(np.zeros((2, 3), dtype=int), 7) == 0


class TestBuildCode:
    def test_binary_parameters(self, binary_code):
        assert binary_code.parameters == "[31,6]"
        assert not binary_code.degenerate

    def test_ternary_parameters(self, ternary_code):
        assert ternary_code.parameters == "[26,4]_3"
        assert ternary_code.generator.shape == (4, 26)

    def test_linear_psi_is_degenerate(self, caplog):
        with caplog.at_level("WARNING"):
            code = build_code(load("linear_f27.json"))
        assert code.k == 3
        assert code.degenerate
        assert "Degenerate dimension" in caplog.text

    def test_codeword_coordinates(self, ternary_code):
        field = ternary_code.spec.field
        beta = field.element(5)
        word = ternary_code.codeword(2, beta)
        for i, x in enumerate(field.elements()[1:]):
            expected = (2 * ternary_code.psi(x) - field.trace(beta * x)) % 3
            assert word[i] == expected


class TestWeightDistribution:
    def test_binary_enumerator(self, binary_code):
        wd = weight_distribution(binary_code)
        assert wd.as_dict() == {0: 1, 8: 3, 16: 59, 24: 1}
        assert enumerator_string(wd) == "1+3y^8+59y^16+1y^24"
        assert min_max_weights(wd) == (8, 24)

    def test_ternary_enumerator(self, ternary_code):
        wd = weight_distribution(ternary_code, max_workers=3)
        assert wd.as_dict() == {0: 1, 15: 16, 18: 62, 24: 2}
        assert wd.total == 3**4
        assert min_max_weights(wd) == (15, 24)

    def test_degenerate_code_counts_each_codeword_once(self):
        code = build_code(load("linear_f27.json"))
        wd = weight_distribution(code)
        assert wd.total == 3**3
        assert wd.as_dict() == {0: 1, 18: 26}

    def test_zero_pair_has_weight_zero(self, ternary_code):
        weights = pair_weights(ternary_code)
        assert weights.shape == (3, 27)
        assert weights[0, 0] == 0

    def test_budget(self, ternary_code):
        assert enumeration_cost(ternary_code) == 81 * 26
        with pytest.raises(BudgetExceeded):
            pair_weights(ternary_code, budget=100)

    def test_single_weight(self):
        wd = WeightDistribution.from_mapping({0: 1, 18: 26})
        assert min_max_weights(wd) == (18, 18)
        with pytest.raises(AnalysisError):
            min_max_weights(WeightDistribution.from_mapping({0: 1}))


@pytest.mark.parametrize(
    "spec",
    [
        lambda: load("ternary_three_weight_f27.json"),
        lambda: load("non_weakly_regular_2_plateaued_f27.json"),
        lambda: load("binary_3_plateaued_f32.json"),
        lambda: trace_poly(gf(5, 2), (0, 2)),
    ],
)
def test_weight_via_walsh_matches_counting(spec):
    spec = spec()
    code = build_code(spec)
    s = walsh_fast(code.psi)
    weights = pair_weights(code)
    field = spec.field
    for alpha in range(field.p):
        for b in range(field.q):
            assert weight_via_walsh(s, alpha, field.element_at(b)) == weights[alpha, b]


def test_codeword_stream(binary_code):
    stream = list(codewords(binary_code))
    assert len(stream) == 2 * 32
    alpha, index, word = stream[0]
    assert (alpha, index) == (0, 0)
    assert not word.any()
    assert len(format_codeword(word, 2)) == 31
    assert format_codeword(np.array([10, 3]), 11) == "10 3"


def test_evaluate_is_reused():
    spec = load("ternary_three_weight_f27.json")
    psi = evaluate(spec)
    assert build_code(spec, psi).psi is psi


def test_distribution_rebuilt_from_spectrum(ternary_code):
    s = walsh_fast(ternary_code.psi)
    assert np.array_equal(walsh_weights(ternary_code, s), pair_weights(ternary_code))
    assert distribution_via_walsh(ternary_code, s) == weight_distribution(ternary_code)


@pytest.mark.parametrize("p, m, terms", [(3, 2, [(0, 2)]), (2, 4, [(0, 3), (4, 5)])])
def test_codewords_are_linear_in_alpha_and_beta(p, m, terms):
    field = gf(p, m)
    code = build_code(trace_poly(field, *terms))
    words = {(alpha, b.index): code.codeword(alpha, b) for alpha in range(p) for b in field.elements()}
    for a1, a2 in itertools.product(range(p), repeat=2):
        for b1, b2 in itertools.product(field.elements(), repeat=2):
            total = words[((a1 + a2) % p, (b1 + b2).index)]
            assert np.array_equal(total, (words[(a1, b1.index)] + words[(a2, b2.index)]) % p)
