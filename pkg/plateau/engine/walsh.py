"""
Walsh transforms of p-ary functions F_{p^m} -> F_p, computed exactly.

W_f(b) = Σ_x ξ^{f(x) - Tr(b x)}

Every transform first collects, for each b, how many x land on each exponent
j ∈ F_p; that count vector is the raw form of W_f(b) in Z[ξ_p].
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from plateau.engine.cyclotomic import CycInt
from plateau.engine.finite_field import ExtField, FieldElement
from plateau.exceptions import AnalysisError, FieldMismatch, RangeViolation, SpecParseError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FunctionSpec:
    """Ψ(x) = Σ c_i x^{e_i}; the analysed function is f = Tr(Ψ)."""

    field: ExtField
    terms: tuple[tuple[FieldElement, int], ...] = ()

    def __post_init__(self) -> None:
        for coeff, exponent in self.terms:
            if exponent < 1:
                raise SpecParseError(f"exponent {exponent} must be positive so that Ψ(0) = 0")
            if coeff.field != self.field:
                raise FieldMismatch(f"coefficient {coeff!r} is not in {self.field!r}")

    def describe(self) -> str:
        monomials = [
            f"{'' if c.exponent == 0 else repr(c)}x^{e}" for c, e in self.terms if not c.is_zero
        ]
        return f"Tr({' + '.join(monomials) or '0'})"


@dataclass(frozen=True, eq=False)
class PAryFunction:
    """Value table of a function F_{p^m} -> F_p in element-index order."""

    field: ExtField
    table: np.ndarray

    def __post_init__(self) -> None:
        table = np.array(self.table, dtype=np.int64)
        if table.shape != (self.field.q,):
            raise FieldMismatch(f"table needs {self.field.q} entries, got shape {table.shape}")
        if table.size and (table.min() < 0 or table.max() >= self.field.p):
            raise RangeViolation(f"function values must lie in 0..{self.field.p - 1}")
        table.flags.writeable = False
        object.__setattr__(self, "table", table)

    def __call__(self, x: FieldElement) -> int:
        return int(self.table[self.field.index_of(x)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PAryFunction):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.table, other.table)

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True, eq=False)
class WalshSpectrum:
    """W_f(b) for every b, in element-index order."""

    field: ExtField
    values: tuple[CycInt, ...]

    def __getitem__(self, index: int) -> CycInt:
        return self.values[index]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WalshSpectrum):
            return NotImplemented
        return self.field == other.field and self.values == other.values

    __hash__ = None  # type: ignore[assignment]

    @cached_property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.values) if not v.is_zero)

    @cached_property
    def squared_magnitudes(self) -> tuple[int, ...]:
        """|W_f(b)|^2 as integers."""
        return tuple(v.abs_square().rational_value() for v in self.values)


@dataclass(frozen=True)
class BalanceCount:
    counts: tuple[int, ...]
    balanced: bool


# ── Evaluation ────────────────────────────────────────────────────────


def evaluate(spec: FunctionSpec) -> PAryFunction:
    """Tabulate f(x) = Tr(Ψ(x)) over the whole field."""
    field = spec.field
    p, order = field.p, field.order
    k = np.arange(order, dtype=np.int64)

    acc = np.zeros((order, field.m), dtype=np.int64)
    for coeff, exponent in spec.terms:
        if coeff.is_zero:
            continue
        exps = (coeff.exponent + (exponent % order) * k) % order
        acc += field.vectors_by_exponent[exps]

    traces = ((acc % p) @ field.basis_traces) % p
    return PAryFunction(field, np.concatenate(([0], traces)))


# ── Transforms ────────────────────────────────────────────────────────


def _spectrum_from_counts(field: ExtField, counts: Iterable[Sequence[int]]) -> WalshSpectrum:
    return WalshSpectrum(field, tuple(CycInt.from_raw(field.p, row) for row in counts))


def _exponent_counts(exponents: np.ndarray, p: int) -> np.ndarray:
    """Per row, how many entries equal each residue j ∈ F_p."""
    return np.stack([(exponents == j).sum(axis=1) for j in range(p)], axis=1)


def walsh_direct(f: PAryFunction) -> WalshSpectrum:
    """Reference transform: every b against every x."""
    field = f.field
    exponents = (f.table[None, :] - field.trace_product_table) % field.p
    return _spectrum_from_counts(field, _exponent_counts(exponents, field.p))


def walsh_fast(f: PAryFunction) -> WalshSpectrum:
    """
    Transform through an F_p^m butterfly in O(m · p^{m+1} · p) operations.

    The butterfly runs on unreduced length-p coefficient vectors, where
    multiplying by ξ^s is a cyclic shift. It yields
    F(v) = Σ_x ξ^{f(x) - v·x} with x, v as coordinate vectors; since
    Tr(b x) = vec(x) · (M vec(b)) for the trace form M, W_f(b) = F(M vec(b)).
    """
    field = f.field
    p, m, q = field.p, field.m, field.q

    raw = np.zeros((q, p), dtype=np.int64)
    raw[field.codes_by_index, f.table] = 1

    arr = raw.reshape((p,) * m + (p,))
    for axis in range(m):
        slices = [np.take(arr, x, axis=axis) for x in range(p)]
        arr = np.stack(
            [sum(np.roll(slices[x], (-v * x) % p, axis=-1) for x in range(p)) for v in range(p)],
            axis=axis,
        )
    flat = arr.reshape(q, p)

    targets = ((field.vectors_by_index @ field.trace_form.T) % p) @ field.place
    return _spectrum_from_counts(field, flat[targets])


def walsh_restricted(g: PAryFunction, support: Sequence[int]) -> WalshSpectrum:
    """W_g(x) = Σ_{b ∈ support} ξ^{g(b) - Tr(b x)}."""
    field = g.field
    idx = np.asarray(support, dtype=np.int64)
    exponents = (g.table[idx][None, :] - field.trace_product_table[:, idx]) % field.p
    return _spectrum_from_counts(field, _exponent_counts(exponents, field.p))


def inverse_transform(s: WalshSpectrum) -> PAryFunction:
    """Recover f from ξ^{f(x)} = p^{-m} Σ_b W_f(b) ξ^{Tr(b x)}."""
    field = s.field
    p, q = field.p, field.q
    raw = np.array([v.raw() for v in s.values], dtype=np.int64)

    acc = np.zeros((q, p), dtype=np.int64)
    for t in range(p):
        mask = (field.trace_product_table == t).astype(np.int64)
        acc += np.roll(mask @ raw, t, axis=1)

    table = np.zeros(q, dtype=np.int64)
    for x in range(q):
        value = CycInt.from_raw(p, acc[x]).divide_exact(q)
        hits = [j for j in range(p) if value == CycInt.one(p).rotate(j)]
        if not hits:
            raise AnalysisError(f"spectrum does not invert to a p-ary function at index {x}")
        table[x] = hits[0]
    return PAryFunction(field, table)


# ── Spectrum statistics ───────────────────────────────────────────────


def moment(s: WalshSpectrum, i: int) -> int:
    """S_i = Σ_b |W_f(b)|^{2i}."""
    if i < 0:
        raise RangeViolation(f"moment order must be non-negative, got {i}")
    if i == 0:
        return s.field.q
    return sum(mag**i for mag in s.squared_magnitudes)


def is_balanced(f: PAryFunction, support: Sequence[int] | None = None) -> BalanceCount:
    """Value counts of f over ``support`` (the whole field by default)."""
    values = f.table if support is None else f.table[np.asarray(support, dtype=np.int64)]
    counts = tuple(int(c) for c in np.bincount(values, minlength=f.field.p))
    return BalanceCount(counts=counts, balanced=len(set(counts)) == 1)


def value_distribution(s: WalshSpectrum) -> Counter[CycInt]:
    return Counter(s.values)
