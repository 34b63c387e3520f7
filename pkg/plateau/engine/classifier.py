"""
Plateau detection and regularity classification.

A function is r-plateaued when every |W_f(b)|^2 lies in {0, p^{m+r}}. For odd
p each nonzero W_f(b) then equals ε_b · G^{m+r} · ξ^{g(b)} with G the quadratic
Gauss sum; the classifier recovers ε_b and the dual g on the support, and
decides regularity from whether ε_b is constant.

Sign bookkeeping
----------------
Besides ε the report carries two derived signs:

- ``table_sign``: the real sign the weight tables need. When m+r is even,
  ε·G^{m+r} = ε·λ^{(m+r)/2}·p^{(m+r)/2} with λ = (-1/p), so the sign is
  ε·λ^{(m+r)/2}; when m+r is odd it is ε itself.
- ``dual_sign_expected``: the sign of the dual's own transform at zero,
  ε·λ^{m + ⌊(m-r)/2⌋}, which drives the N_g(j) value counts.

``sign_discrepancy`` is set when either differs from ε.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from plateau.engine.cyclotomic import CycInt, gauss_sum, match_unit_multiple
from plateau.engine.finite_field import legendre
from plateau.engine.walsh import PAryFunction, WalshSpectrum, value_distribution, walsh_restricted
from plateau.exceptions import (
    MismatchAt,
    NoCanonicalForm,
    NotPlateaued,
    NotWeaklyRegular,
    ParityViolation,
    RangeViolation,
)

logger = logging.getLogger(__name__)


class Regularity(str, Enum):
    REGULAR = "regular"
    WEAKLY_REGULAR = "weakly_regular"
    NON_WEAKLY_REGULAR = "non_weakly_regular"
    NOT_APPLICABLE = "not_applicable"


class Unit(str, Enum):
    PLUS_ONE = "+1"
    MINUS_ONE = "-1"
    PLUS_I = "+i"
    MINUS_I = "-i"


_REAL_UNITS = {1: Unit.PLUS_ONE, -1: Unit.MINUS_ONE}
_IMAGINARY_UNITS = {1: Unit.PLUS_I, -1: Unit.MINUS_I}


@dataclass(frozen=True, eq=False)
class PlateauedReport:
    p: int
    m: int
    r: int
    regularity: Regularity
    epsilon: int | None
    unit: Unit | None
    unit_exact: Unit | None
    dual_g: PAryFunction
    support: tuple[int, ...]
    point_signs: tuple[int, ...]
    ng_counts: tuple[int, ...]
    g_balanced: bool
    table_sign: int | None = None
    dual_sign_expected: int | None = None
    dual_sign_measured: int | None = None
    is_plateaued: bool = True

    @property
    def is_bent(self) -> bool:
        return self.r == 0

    @property
    def weakly_regular(self) -> bool:
        return self.regularity in (Regularity.REGULAR, Regularity.WEAKLY_REGULAR)

    @property
    def support_size(self) -> int:
        return len(self.support)

    @property
    def sign_discrepancy(self) -> bool:
        if self.epsilon is None:
            return False
        return self.table_sign != self.epsilon or self.dual_sign_expected != self.epsilon

    def walsh_form(self) -> str:
        """Human-readable shape of the nonzero transform values."""
        p, s = self.p, self.m + self.r
        if p == 2:
            return f"W ∈ {{0, ±{2 ** (s // 2)}}}"
        if not self.weakly_regular:
            return f"W ∈ {{0, ±G^{s}ξ^g}}"
        if s % 2 == 0:
            return f"W ∈ {{0, {self.table_sign * p ** (s // 2)}ξ^g}}"
        prefix = {"+1": "", "-1": "-", "+i": "i·", "-i": "-i·"}[self.unit_exact.value]
        return f"W ∈ {{0, {prefix}{p}^({s}/2)ξ^g}}"

    def summary(self) -> str:
        label = self.regularity.value.replace("_", " ")
        if self.p == 2:
            label = "plateaued"
        text = f"{label}, r={self.r}, {self.walsh_form()}"
        return f"{text} (bent)" if self.is_bent else text


# ── Detection ─────────────────────────────────────────────────────────


def _exact_log(value: int, base: int) -> int | None:
    exponent = 0
    while value > 1 and value % base == 0:
        value //= base
        exponent += 1
    return exponent if value == 1 else None


def detect_plateau(s: WalshSpectrum) -> int:
    """Return r such that every |W_f(b)|^2 lies in {0, p^{m+r}}."""
    p, m = s.field.p, s.field.m
    magnitudes = {mag for mag in s.squared_magnitudes if mag}
    if len(magnitudes) != 1:
        raise NotPlateaued(f"{len(magnitudes)} distinct nonzero |W|^2 values: {sorted(magnitudes)[:5]}")
    (magnitude,) = magnitudes
    exponent = _exact_log(magnitude, p)
    if exponent is None or not m <= exponent <= 2 * m:
        raise NotPlateaued(f"|W|^2 = {magnitude} is not p^(m+r) with 0 <= r <= m")
    r = exponent - m
    if len(s.support) != p ** (m - r):
        raise NotPlateaued(f"support has {len(s.support)} points, expected {p ** (m - r)}")
    logger.debug("Plateau detected | p=%d | m=%d | r=%d", p, m, r)
    return r


# ── Units and signs ───────────────────────────────────────────────────


def derive_unit(epsilon: int, p: int, m: int, r: int) -> Unit:
    """
    The unit u in ε·G^{m+r} = u · p^{(m+r)/2}, tabulated convention.

    For m+r odd and p ≡ 3 (mod 4) this reports ε·i regardless of m+r mod 4;
    ``exact_unit`` gives the value with the i^{m+r} factor applied.
    """
    s = m + r
    if s % 2 == 0:
        return _REAL_UNITS[epsilon * (-1) ** ((p - 1) * s // 4)]
    if p % 4 == 1:
        return _REAL_UNITS[epsilon]
    return _IMAGINARY_UNITS[epsilon]


def exact_unit(epsilon: int, p: int, m: int, r: int) -> Unit:
    s = m + r
    if s % 2 == 0 or p % 4 == 1:
        return derive_unit(epsilon, p, m, r)
    return _IMAGINARY_UNITS[epsilon if s % 4 == 1 else -epsilon]


def measure_dual_sign(ng_counts: tuple[int, ...], p: int, m: int, r: int) -> int | None:
    """
    Sign of Σ_{b∈S} ξ^{g(b)} relative to p^{⌊(m-r)/2⌋} · G^{(m-r) mod 2}.

    Returns None when the sum is not of that shape.
    """
    value = CycInt.from_raw(p, ng_counts)
    half, odd = divmod(m - r, 2)
    base = CycInt.from_int(p, p**half)
    if odd:
        base = base * gauss_sum(p)
    match = match_unit_multiple(value, base)
    return None if match is None else match[0]


# ── Classification ────────────────────────────────────────────────────


def classify(s: WalshSpectrum, r: int) -> PlateauedReport:
    """Recover signs and the dual g of an r-plateaued spectrum."""
    field = s.field
    p, m = field.p, field.m
    support = s.support
    g = np.zeros(field.q, dtype=np.int64)

    if p == 2:
        magnitude = 2 ** ((m + r) // 2)
        for b in support:
            g[b] = 0 if s.values[b].rational_value() == magnitude else 1
        counts = tuple(int(c) for c in np.bincount(g[list(support)], minlength=2))
        return PlateauedReport(
            p=p, m=m, r=r,
            regularity=Regularity.NOT_APPLICABLE,
            epsilon=None, unit=None, unit_exact=None,
            dual_g=PAryFunction(field, g),
            support=support,
            point_signs=(1,) * len(support),
            ng_counts=counts,
            g_balanced=len(set(counts)) == 1,
        )

    base = gauss_sum(p) ** (m + r)
    signs = []
    for b in support:
        match = match_unit_multiple(s.values[b], base)
        if match is None:
            raise NoCanonicalForm(f"W_f at index {b} is not ±G^{m + r}·ξ^j")
        sign, g[b] = match
        signs.append(sign)

    counts = tuple(int(c) for c in np.bincount(g[list(support)], minlength=p))
    dual = PAryFunction(field, g)

    if len(set(signs)) > 1:
        logger.debug("Non-weakly regular | r=%d | signs=%s", r, sorted(set(signs)))
        return PlateauedReport(
            p=p, m=m, r=r,
            regularity=Regularity.NON_WEAKLY_REGULAR,
            epsilon=None, unit=None, unit_exact=None,
            dual_g=dual,
            support=support,
            point_signs=tuple(signs),
            ng_counts=counts,
            g_balanced=len(set(counts)) == 1,
        )

    epsilon = signs[0]
    lam = legendre(-1, p)
    unit = derive_unit(epsilon, p, m, r)
    report = PlateauedReport(
        p=p, m=m, r=r,
        regularity=Regularity.REGULAR if unit is Unit.PLUS_ONE else Regularity.WEAKLY_REGULAR,
        epsilon=epsilon,
        unit=unit,
        unit_exact=exact_unit(epsilon, p, m, r),
        dual_g=dual,
        support=support,
        point_signs=tuple(signs),
        ng_counts=counts,
        g_balanced=len(set(counts)) == 1,
        table_sign=epsilon * lam ** ((m + r) // 2) if (m + r) % 2 == 0 else epsilon,
        dual_sign_expected=epsilon * lam ** (m + (m - r) // 2),
        dual_sign_measured=measure_dual_sign(counts, p, m, r),
    )
    if report.sign_discrepancy:
        logger.debug(
            "Sign bookkeeping | ε=%d | table_sign=%d | dual_sign=%d",
            epsilon, report.table_sign, report.dual_sign_expected,
        )
    return report


def verify_dual_inverse(report: PlateauedReport, f: PAryFunction) -> bool:
    """
    Check the dual identity on the support transform of g at every x:

    Σ_{b∈S} ξ^{g(b) - Tr(b x)} = ε·λ^m·G^{m-r}·ξ^{f(-x)}    (odd p)
    Σ_{b∈S} (-1)^{g(b) + Tr(b x)} = 2^{(m-r)/2}·(-1)^{f(x)}    (p = 2)
    """
    p, m, r = report.p, report.m, report.r
    if p == 2:
        base = CycInt.from_int(2, 2 ** ((m - r) // 2))
    elif report.weakly_regular:
        base = gauss_sum(p) ** (m - r) * (report.epsilon * legendre(-1, p) ** m)
    else:
        raise NotWeaklyRegular("the dual identity needs a constant sign ε")

    transform = walsh_restricted(report.dual_g, report.support)
    neg = f.field.neg_index
    for x in range(f.field.q):
        expected = base.rotate(int(f.table[neg[x]]))
        if transform.values[x] != expected:
            raise MismatchAt(x, f"got {transform.values[x]}, expected {expected}")
    return True


# ── Value counts ──────────────────────────────────────────────────────


def ng_predicted(p: int, m: int, r: int, epsilon_g: int, balanced: bool) -> tuple[int, ...]:
    """N_g(j) = #{b ∈ S : g(b) = j} implied by the dual sign ``epsilon_g``."""
    if not 0 <= r <= m:
        raise RangeViolation(f"r={r} outside 0..{m}")
    base = Fraction(p) ** (m - r - 1)
    if balanced:
        counts = [base] * p
    elif (m - r) % 2 == 0:
        step = epsilon_g * Fraction(p) ** Fraction(m - r - 2, 2)
        counts = [base + step * (p - 1)] + [base - step] * (p - 1)
    else:
        step = epsilon_g * Fraction(p) ** ((m - r - 1) // 2)
        counts = [base] + [base + step * legendre(j, p) for j in range(1, p)]
    if any(c.denominator != 1 or c < 0 for c in counts):
        raise RangeViolation(f"no integral value counts for p={p}, m={m}, r={r}, balanced={balanced}")
    return tuple(int(c) for c in counts)


def binary_walsh_counts_expected(m: int, r: int, f0: int) -> dict[int, int]:
    """Value distribution of an r-plateaued Boolean spectrum (m+r even)."""
    if (m + r) % 2:
        raise ParityViolation(f"binary plateaued needs m+r even, got m={m}, r={r}")
    amplitude = 2 ** ((m + r) // 2)
    sigma = -1 if f0 else 1
    half = Fraction(2) ** (m - r - 1)
    step = sigma * Fraction(2) ** Fraction(m - r - 2, 2)
    expected = {amplitude: half + step, -amplitude: half - step, 0: Fraction(2**m - 2 ** (m - r))}
    return {value: int(count) for value, count in expected.items() if count}


def check_binary_distribution(s: WalshSpectrum, f: PAryFunction, r: int) -> bool:
    measured = {v.rational_value(): n for v, n in value_distribution(s).items()}
    return measured == binary_walsh_counts_expected(s.field.m, r, int(f.table[0]))
