import numpy as np
import pytest

from plateau.engine.code_builder import WeightDistribution, build_code, weight_distribution
from plateau.engine.minimality import (
    all_minimal_exhaustive,
    ashikhmin_barg,
    covers,
    range_guarantee,
)
from plateau.engine.theory import ParityCase
from plateau.exceptions import BudgetExceeded, LengthMismatch
from tests.helpers import load


def test_covers():
    assert covers([1, 2, 0, 1], [0, 1, 0, 2])
    assert covers([1, 1, 1], [1, 1, 1])
    assert not covers([1, 0, 1], [0, 1, 0])
    with pytest.raises(LengthMismatch):
        covers([1, 0], [1, 0, 0])


class TestAshikhminBarg:
    def test_binary_three_weight_code_fails(self):
        wd = WeightDistribution.from_mapping({0: 1, 8: 3, 16: 59, 24: 1})
        assert not ashikhmin_barg(wd, 2)

    def test_ternary_three_weight_code_fails(self):
        wd = WeightDistribution.from_mapping({0: 1, 15: 16, 18: 62, 24: 2})
        assert not ashikhmin_barg(wd, 3)

    def test_bent_code_over_f81_holds(self):
        wd = weight_distribution(build_code(load("quadratic_bent_f81.json")))
        assert ashikhmin_barg(wd, 3)

    def test_boundary_is_strict(self):
        # (p-1)/p == w_min/w_max
        wd = WeightDistribution.from_mapping({0: 1, 12: 4, 18: 4})
        assert not ashikhmin_barg(wd, 3)


@pytest.mark.parametrize(
    "p, m, r, case, expected",
    [
        (3, 4, 0, ParityCase.ODD_EVEN, True),
        (3, 3, 1, ParityCase.ODD_EVEN, False),
        (3, 3, 0, ParityCase.ODD_ODD, True),
        (3, 3, 1, ParityCase.ODD_ODD, False),
        (2, 4, 0, ParityCase.BINARY_EVEN, True),
        (2, 6, 2, ParityCase.BINARY_EVEN, True),
        (2, 6, 4, ParityCase.BINARY_EVEN, False),
    ],
)
def test_range_guarantee(p, m, r, case, expected):
    assert range_guarantee(p, m, r, case) is expected


class TestExhaustive:
    def test_bent_code_is_minimal(self):
        verdict = all_minimal_exhaustive(build_code(load("quadratic_bent_f81.json")))
        assert verdict.all_minimal
        # (3^5 - 1) / 2 scalar classes
        assert verdict.representatives == 121
        assert verdict.witness is None

    def test_full_weight_codeword_covers_everything(self):
        # Tr(x^7) over F_8 is 1 at every nonzero x, so c_{1,0} is all ones
        code = build_code(load("not_plateaued_f8.json"))
        verdict = all_minimal_exhaustive(code)
        assert not verdict.all_minimal
        (big_alpha, big_b), (small_alpha, small_b) = verdict.witness
        field = code.spec.field
        big = code.codeword(big_alpha, field.element_at(big_b))
        small = code.codeword(small_alpha, field.element_at(small_b))
        assert covers(big, small)

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            all_minimal_exhaustive(build_code(load("quadratic_bent_f81.json")), budget=100)


def test_covers_is_a_preorder():
    rng = np.random.default_rng(4)
    words = rng.integers(0, 2, size=(40, 8)) * rng.integers(1, 3, size=(40, 8))
    for a in words:
        assert covers(a, a)
        for b in words[:10]:
            for c in words[:10]:
                if covers(a, b) and covers(b, c):
                    assert covers(a, c)
    assert not covers([0, 0, 0], [1, 0, 0])
    assert covers([1, 1, 0], [1, 0, 0])
