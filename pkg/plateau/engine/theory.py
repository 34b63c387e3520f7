"""
Closed-form weight distributions of C_ψ1 for (weakly regular) plateaued ψ1.

Three parameter regimes are covered:

- binary, m+r even (0 <= r <= m-2)
- odd p, m+r even (0 <= r <= m-2)
- odd p, m+r odd (0 <= r <= m-1)

Weights use the real sign of ε·G^{m+r} (``table_sign``). Multiplicities
depend on how the dual g is distributed over the support, i.e. on the dual
sign ε_g = ε·λ^{m + ⌊(m-r)/2⌋}, λ = (-1/p). When the dual is balanced every
nonzero weight class has the same multiplicity per residue.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum

from plateau.engine.classifier import PlateauedReport
from plateau.engine.code_builder import WeightDistribution
from plateau.engine.finite_field import legendre
from plateau.exceptions import AnalysisError, NotWeaklyRegular, ParityViolation, RangeViolation

logger = logging.getLogger(__name__)


class ParityCase(str, Enum):
    BINARY_EVEN = "binary_even"
    ODD_EVEN = "odd_even"
    ODD_ODD = "odd_odd"


@dataclass(frozen=True)
class PredictedDistribution:
    p: int
    m: int
    r: int
    epsilon: int | None
    g_balanced: bool | None
    case: ParityCase
    rows: tuple[tuple[int, int], ...]
    provenance: str
    table_sign: int | None = None
    dual_sign: int | None = None

    @property
    def total(self) -> int:
        return sum(a for _, a in self.rows)

    def as_dict(self) -> dict[int, int]:
        return dict(self.rows)


@dataclass(frozen=True)
class DistributionDiff:
    matches: bool
    missing: tuple[tuple[int, int], ...] = ()  # predicted weights absent from the code
    extra: tuple[tuple[int, int], ...] = ()  # code weights absent from the prediction
    mismatched: tuple[tuple[int, int, int], ...] = field(default=())  # (w, predicted, actual)


def parity_case(p: int, m: int, r: int) -> ParityCase:
    if p == 2:
        if (m + r) % 2:
            raise ParityViolation(f"binary plateaued functions need m+r even, got m={m}, r={r}")
        return ParityCase.BINARY_EVEN
    return ParityCase.ODD_EVEN if (m + r) % 2 == 0 else ParityCase.ODD_ODD


def set_cardinalities(p: int, m: int, r: int) -> tuple[int, int]:
    """(#{(α,β): α≠0, W_f(α^{-1}β) = 0}, #{(α,β): α≠0, W_f(α^{-1}β) ≠ 0})."""
    return (p - 1) * (p**m - p ** (m - r)), (p - 1) * p ** (m - r)


def _rows(*rows: tuple[int, int]) -> tuple[tuple[int, int], ...]:
    return tuple((w, a) for w, a in rows if a)


def _check_even_range(m: int, r: int) -> None:
    if m < 2 or not 0 <= r <= m - 2:
        raise RangeViolation(f"m+r even needs m >= 2 and 0 <= r <= m-2, got m={m}, r={r}")


# ── Tables ────────────────────────────────────────────────────────────


def predict_binary(m: int, r: int) -> PredictedDistribution:
    if (m + r) % 2:
        raise ParityViolation(f"binary case needs m+r even, got m={m}, r={r}")
    _check_even_range(m, r)
    center = 2 ** (m - 1)
    shift = 2 ** ((m + r - 2) // 2)
    half = 2 ** (m - r - 1)
    step = 2 ** ((m - r - 2) // 2)
    rows = _rows(
        (0, 1),
        (center, 2 ** (m + 1) - 2 ** (m - r) - 1),
        (center - shift, half + step),
        (center + shift, half - step),
    )
    return PredictedDistribution(
        p=2, m=m, r=r, epsilon=None, g_balanced=None,
        case=ParityCase.BINARY_EVEN, rows=rows,
        provenance="binary, m+r even",
    )


def predict_odd_even(p: int, m: int, r: int, epsilon: int, g_balanced: bool) -> PredictedDistribution:
    if p == 2:
        raise ParityViolation("odd-characteristic table requested for p=2")
    if (m + r) % 2:
        raise ParityViolation(f"m+r must be even, got m={m}, r={r}")
    _check_even_range(m, r)

    sign = epsilon * legendre(-1, p) ** ((m + r) // 2)
    center = p**m - p ** (m - 1)
    shift = p ** ((m + r - 2) // 2)
    low = p ** (m - r - 1) * (p - 1)
    high = (p ** (m - r) - p ** (m - r - 1)) * (p - 1)
    skew = 0 if g_balanced else sign * p ** ((m - r - 2) // 2) * (p - 1) ** 2

    rows = _rows(
        (0, 1),
        (center, p ** (m + 1) - p ** (m - r) * (p - 1) - 1),
        (center - sign * (p - 1) * shift, low + skew),
        (center + sign * shift, high - skew),
    )
    return PredictedDistribution(
        p=p, m=m, r=r, epsilon=epsilon, g_balanced=g_balanced,
        case=ParityCase.ODD_EVEN, rows=rows,
        provenance=f"odd p, m+r even, {'balanced' if g_balanced else 'unbalanced'} dual",
        table_sign=sign, dual_sign=sign,
    )


def predict_odd_odd(p: int, m: int, r: int, epsilon: int, g_balanced: bool) -> PredictedDistribution:
    if p == 2:
        raise ParityViolation("odd-characteristic table requested for p=2")
    if (m + r) % 2 == 0:
        raise ParityViolation(f"m+r must be odd, got m={m}, r={r}")
    if m < 1 or not 0 <= r <= m - 1:
        raise RangeViolation(f"m+r odd needs 0 <= r <= m-1, got m={m}, r={r}")

    lam = legendre(-1, p)
    dual_sign = epsilon * lam ** (m + (m - r - 1) // 2)
    outer = (-1) ** ((p - 1) * (m + r + 1) // 4)
    center = p**m - p ** (m - 1)
    shift = epsilon * outer * p ** ((m + r - 1) // 2)
    square = (p - 1) ** 2

    center_count = p ** (m + 1) - p ** (m - r - 1) * square - 1
    if center_count != p ** (m + 1) + 2 * p ** (m - r) - p ** (m - r + 1) - p ** (m - r - 1) - 1:
        raise AnalysisError("center multiplicity forms disagree")

    if g_balanced:
        residue_count = (p ** (m - r - 1), p ** (m - r - 1))
    else:
        step = dual_sign * p ** ((m - r - 1) // 2)
        residue_count = (p ** (m - r - 1) + step, p ** (m - r - 1) - step)

    rows = _rows(
        (0, 1),
        (center, center_count),
        (center - shift, residue_count[0] * square // 2),
        (center + shift, residue_count[1] * square // 2),
    )
    return PredictedDistribution(
        p=p, m=m, r=r, epsilon=epsilon, g_balanced=g_balanced,
        case=ParityCase.ODD_ODD, rows=rows,
        provenance=f"odd p, m+r odd, {'balanced' if g_balanced else 'unbalanced'} dual",
        table_sign=epsilon, dual_sign=dual_sign,
    )


def predict(report: PlateauedReport) -> PredictedDistribution:
    """Pick the table matching a classified function."""
    p, m, r = report.p, report.m, report.r
    case = parity_case(p, m, r)
    if case is ParityCase.BINARY_EVEN:
        return predict_binary(m, r)
    if not report.weakly_regular:
        raise NotWeaklyRegular(f"tables need a weakly regular function, got {report.regularity.value}")
    if case is ParityCase.ODD_EVEN:
        return predict_odd_even(p, m, r, report.epsilon, report.g_balanced)
    return predict_odd_odd(p, m, r, report.epsilon, report.g_balanced)


def predicted_weight(
    p: int,
    m: int,
    r: int,
    epsilon: int | None,
    g_value: int,
    alpha_nonzero: bool,
    in_support: bool = True,
) -> int:
    """
    Weight of one codeword c_{α,β} with α ≠ 0 from g(α^{-1}β).

    ``alpha_nonzero=False`` covers α = 0, β ≠ 0; ``in_support=False`` covers
    the points where W_f(α^{-1}β) = 0.
    """
    center = p**m - p ** (m - 1)
    if not alpha_nonzero or not in_support:
        return center
    if p == 2:
        shift = 2 ** ((m + r - 2) // 2)
        return center - shift if g_value == 0 else center + shift
    if (m + r) % 2 == 0:
        sign = epsilon * legendre(-1, p) ** ((m + r) // 2)
        shift = p ** ((m + r - 2) // 2)
        return center - sign * (p - 1) * shift if g_value == 0 else center + sign * shift
    outer = (-1) ** ((p - 1) * (m + r + 1) // 4)
    return center - epsilon * outer * p ** ((m + r - 1) // 2) * legendre(g_value, p)


# ── Comparison and rendering ──────────────────────────────────────────


def compare(predicted: PredictedDistribution, empirical: WeightDistribution) -> DistributionDiff:
    expected = predicted.as_dict()
    actual = empirical.as_dict()
    missing = tuple((w, a) for w, a in sorted(expected.items()) if w not in actual)
    extra = tuple((w, a) for w, a in sorted(actual.items()) if w not in expected)
    mismatched = tuple(
        (w, expected[w], actual[w]) for w in sorted(expected) if w in actual and expected[w] != actual[w]
    )
    diff = DistributionDiff(
        matches=not (missing or extra or mismatched),
        missing=missing,
        extra=extra,
        mismatched=mismatched,
    )
    if not diff.matches:
        logger.warning(
            "Distribution mismatch | case=%s | missing=%s | extra=%s | mismatched=%s",
            predicted.case.value, missing, extra, mismatched,
        )
    return diff


def render_table(predicted: PredictedDistribution) -> str:
    header = ("Hamming weight w", "Multiplicity A_w")
    rows = [(str(w), str(a)) for w, a in predicted.rows]
    left = max(len(header[0]), *(len(w) for w, _ in rows))
    right = max(len(header[1]), *(len(a) for _, a in rows))
    lines = [
        f"{header[0]:>{left}} | {header[1]}",
        f"{'-' * left}-+-{'-' * right}",
    ]
    lines += [f"{w:>{left}} | {a}" for w, a in rows]
    lines.append(f"{'total':>{left}} | {predicted.total}")
    return "\n".join(lines)
