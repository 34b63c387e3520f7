"""
Arithmetic in F_p and F_{p^m}.

A field is defined by a prime ``p``, a degree ``m`` and a monic primitive
modulus given constant-term first. ``ζ`` is the class of ``x`` modulo that
polynomial. Elements are stored by discrete logarithm; coefficient vectors
over the basis ``ζ^0 .. ζ^{m-1}`` come from the antilog table.

Every table in the engine uses the same element order::

    index 0      -> 0
    index k + 1  -> ζ^k      (k = 0 .. q - 2)

A vector ``(c_0, .., c_{m-1})`` is encoded as the integer ``Σ c_i p^i``
("code"); ``ExtField.log`` and ``ExtField.antilog`` translate between codes
and exponents.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np
from sympy import Poly, isprime, legendre_symbol, symbols

from plateau.exceptions import (
    DivisionByZero,
    FieldMismatch,
    InvalidModulus,
    NotPrime,
    NotPrimitive,
    Reducible,
)

logger = logging.getLogger(__name__)

_X = symbols("x")


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime ``p``; 0 when p divides a."""
    if p == 2 or not isprime(p):
        raise NotPrime(f"Legendre symbol needs an odd prime, got p={p}")
    return int(legendre_symbol(a % p, p))


@dataclass(frozen=True, repr=False)
class FieldElement:
    """An element of an ``ExtField``; ``exponent`` is None for zero."""

    field: ExtField
    exponent: int | None

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    @property
    def index(self) -> int:
        """Position in the engine-wide element order."""
        return 0 if self.exponent is None else self.exponent + 1

    @property
    def vector(self) -> tuple[int, ...]:
        return self.field.to_vector(self)

    def _coerce(self, other: FieldElement | int) -> FieldElement:
        if isinstance(other, int):
            return self.field.from_int(other)
        return other

    def __add__(self, other: FieldElement | int) -> FieldElement:
        return self.field.add(self, self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other: FieldElement | int) -> FieldElement:
        return self.field.add(self, self.field.neg(self._coerce(other)))

    def __neg__(self) -> FieldElement:
        return self.field.neg(self)

    def __mul__(self, other: FieldElement | int) -> FieldElement:
        return self.field.mul(self, self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other: FieldElement | int) -> FieldElement:
        return self.field.mul(self, self.field.inv(self._coerce(other)))

    def __pow__(self, n: int) -> FieldElement:
        return self.field.pow(self, n)

    def __repr__(self) -> str:
        return "0" if self.exponent is None else f"ζ^{self.exponent}"


class ExtField:
    """
    F_{p^m} with log/antilog tables for ζ = x mod ``modulus``.

    Build instances through ``make_field``; the constructor assumes ``p`` is
    prime and ``modulus`` is irreducible, and only checks primitivity while
    walking the powers of ζ.
    """

    def __init__(self, p: int, m: int, modulus: Sequence[int]) -> None:
        self.p = p
        self.m = m
        self.modulus = tuple(int(c) for c in modulus)
        self.q = p**m
        self.order = self.q - 1
        self.place = p ** np.arange(m, dtype=np.int64)

        self.antilog = _power_codes(p, m, self.modulus)
        log = np.full(self.q, -1, dtype=np.int64)
        log[self.antilog] = np.arange(self.order, dtype=np.int64)
        self.log = log

        codes = np.arange(self.q, dtype=np.int64)
        self._digits = (codes[:, None] // self.place[None, :]) % p

        for table in (self.antilog, self.log, self._digits):
            table.flags.writeable = False

    # ── Identity ──────────────────────────────────────────────────────

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExtField):
            return NotImplemented
        return (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def __repr__(self) -> str:
        return f"ExtField(p={self.p}, m={self.m}, modulus={list(self.modulus)})"

    # ── Element constructors ──────────────────────────────────────────

    def element(self, exponent: int | None) -> FieldElement:
        """ζ^exponent, or zero for None."""
        if exponent is None:
            return FieldElement(self, None)
        return FieldElement(self, exponent % self.order)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, None)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def zeta(self) -> FieldElement:
        return self.element(1)

    def element_at(self, index: int) -> FieldElement:
        """Element at position ``index`` of the engine-wide order."""
        if not 0 <= index < self.q:
            raise IndexError(f"element index {index} outside 0..{self.q - 1}")
        return self.element(None if index == 0 else index - 1)

    def elements(self) -> list[FieldElement]:
        return [self.element_at(i) for i in range(self.q)]

    def from_int(self, a: int) -> FieldElement:
        """Embed the residue ``a mod p`` of the prime subfield."""
        return self._from_code(a % self.p)

    def from_vector(self, vector: Sequence[int]) -> FieldElement:
        """Element with coordinates ``vector`` over ζ^0 .. ζ^{m-1}."""
        if len(vector) != self.m:
            raise FieldMismatch(f"expected {self.m} coordinates, got {len(vector)}")
        digits = np.asarray(vector, dtype=np.int64) % self.p
        return self._from_code(int(digits @ self.place))

    def to_vector(self, e: FieldElement) -> tuple[int, ...]:
        self._check(e)
        return tuple(int(d) for d in self._digits[self._code(e)])

    def index_of(self, e: FieldElement) -> int:
        self._check(e)
        return e.index

    # ── Arithmetic ────────────────────────────────────────────────────

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        self._check(a, b)
        if a.is_zero:
            return b
        if b.is_zero:
            return a
        digits = (self._digits[self._code(a)] + self._digits[self._code(b)]) % self.p
        return self._from_code(int(digits @ self.place))

    def neg(self, a: FieldElement) -> FieldElement:
        self._check(a)
        if a.is_zero:
            return a
        digits = (-self._digits[self._code(a)]) % self.p
        return self._from_code(int(digits @ self.place))

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        self._check(a, b)
        if a.is_zero or b.is_zero:
            return self.zero
        return FieldElement(self, (a.exponent + b.exponent) % self.order)

    def inv(self, a: FieldElement) -> FieldElement:
        self._check(a)
        if a.is_zero:
            raise DivisionByZero("zero has no inverse")
        return FieldElement(self, (-a.exponent) % self.order)

    def pow(self, a: FieldElement, n: int) -> FieldElement:
        self._check(a)
        if a.is_zero:
            if n > 0:
                return self.zero
            if n == 0:
                return self.one
            raise DivisionByZero("negative power of zero")
        return FieldElement(self, (a.exponent * n) % self.order)

    def trace(self, e: FieldElement) -> int:
        """Absolute trace Σ_{i<m} e^{p^i}, an element of F_p."""
        self._check(e)
        total = self.zero
        for i in range(self.m):
            total = self.add(total, self.pow(e, self.p**i))
        code = self._code(total)
        if code >= self.p:
            raise ArithmeticError(f"trace of {e!r} left the prime subfield")
        return code

    # ── Bulk tables ───────────────────────────────────────────────────

    @cached_property
    def codes_by_index(self) -> np.ndarray:
        """Coefficient code of the element at every index."""
        codes = np.concatenate(([0], self.antilog)).astype(np.int64)
        codes.flags.writeable = False
        return codes

    @cached_property
    def index_by_code(self) -> np.ndarray:
        index = self.log + 1
        index.flags.writeable = False
        return index

    @cached_property
    def vectors_by_index(self) -> np.ndarray:
        """Shape (q, m): coordinates of every element in index order."""
        return self._digits[self.codes_by_index]

    @cached_property
    def vectors_by_exponent(self) -> np.ndarray:
        """Shape (q - 1, m): coordinates of ζ^k."""
        return self._digits[self.antilog]

    @cached_property
    def basis_traces(self) -> np.ndarray:
        """Tr(ζ^i) for i < m; the trace is linear in these."""
        traces = np.array([self.trace(self.element(i)) for i in range(self.m)], dtype=np.int64)
        traces.flags.writeable = False
        return traces

    @cached_property
    def trace_by_index(self) -> np.ndarray:
        traces = (self.vectors_by_index @ self.basis_traces) % self.p
        traces.flags.writeable = False
        return traces

    @cached_property
    def trace_form(self) -> np.ndarray:
        """M[i][j] = Tr(ζ^{i+j}); Tr(b x) = vec(x) · M · vec(b)."""
        i = np.arange(self.m)
        exps = (i[:, None] + i[None, :]) % self.order
        form = self.trace_by_index[exps + 1]
        form.flags.writeable = False
        return form

    @cached_property
    def trace_product_table(self) -> np.ndarray:
        """Shape (q, q): Tr(b·x) for every pair of element indices."""
        exps = np.arange(self.order, dtype=np.int64)
        products = (exps[:, None] + exps[None, :]) % self.order
        table = np.zeros((self.q, self.q), dtype=np.int8)
        table[1:, 1:] = self.trace_by_index[products + 1]
        table.flags.writeable = False
        return table

    def trace_row(self, b: FieldElement) -> np.ndarray:
        """Tr(b·x) for every x, without building the full product table."""
        self._check(b)
        if b.is_zero:
            return np.zeros(self.q, dtype=np.int64)
        exps = (b.exponent + np.arange(self.order, dtype=np.int64)) % self.order
        return np.concatenate(([0], self.trace_by_index[exps + 1]))

    @cached_property
    def neg_index(self) -> np.ndarray:
        """Index of -x for every index x."""
        codes = ((-self.vectors_by_index) % self.p) @ self.place
        index = self.index_by_code[codes]
        index.flags.writeable = False
        return index

    # ── Internals ─────────────────────────────────────────────────────

    def _check(self, *elements: FieldElement) -> None:
        for e in elements:
            if e.field is not self and e.field != self:
                raise FieldMismatch(f"{e!r} belongs to {e.field!r}, not {self!r}")

    def _code(self, e: FieldElement) -> int:
        return 0 if e.exponent is None else int(self.antilog[e.exponent])

    def _from_code(self, code: int) -> FieldElement:
        exponent = int(self.log[code])
        return FieldElement(self, None if exponent < 0 else exponent)


def _power_codes(p: int, m: int, modulus: tuple[int, ...]) -> np.ndarray:
    """Codes of ζ^0 .. ζ^{q-2}; raises NotPrimitive if ζ has smaller order."""
    order = p**m - 1
    place = [p**i for i in range(m)]
    tail = modulus[:m]
    unit = [1] + [0] * (m - 1)

    codes = np.empty(order, dtype=np.int64)
    vec = list(unit)
    for k in range(order):
        code = sum(c * w for c, w in zip(vec, place))
        if k and code == 1:
            raise NotPrimitive(f"ζ has order {k}, expected {order}")
        codes[k] = code
        top = vec[-1]
        vec = [0] + vec[:-1]
        if top:
            vec = [(v - top * t) % p for v, t in zip(vec, tail)]
    if vec != unit:
        raise NotPrimitive(f"powers of ζ do not cycle with period {order}")
    return codes


@lru_cache(maxsize=32)
def _cached_field(p: int, m: int, modulus: tuple[int, ...]) -> ExtField:
    field = ExtField(p, m, modulus)
    logger.debug("Field ready | p=%d | m=%d | modulus=%s", p, m, list(modulus))
    return field


def make_field(p: int, m: int, modulus: Sequence[int]) -> ExtField:
    """
    Validate ``(p, m, modulus)`` and build the field.

    ``modulus`` lists the coefficients constant-term first and must be monic
    of degree ``m``, irreducible over F_p and primitive.
    """
    if not isprime(p):
        raise NotPrime(f"p={p} is not prime")
    if m < 1:
        raise InvalidModulus(f"degree m must be at least 1, got {m}")
    coeffs = tuple(int(c) for c in modulus)
    if len(coeffs) != m + 1:
        raise InvalidModulus(f"modulus needs {m + 1} coefficients, got {len(coeffs)}")
    if any(not 0 <= c < p for c in coeffs):
        raise InvalidModulus(f"modulus coefficients must lie in 0..{p - 1}")
    if coeffs[-1] != 1:
        raise InvalidModulus("modulus must be monic")
    if m > 1 and not Poly(list(reversed(coeffs)), _X, modulus=p).is_irreducible:
        raise Reducible(f"{_render_poly(coeffs)} is reducible over F_{p}")
    return _cached_field(p, m, coeffs)


def _render_poly(coeffs: Sequence[int]) -> str:
    terms = []
    for power in range(len(coeffs) - 1, -1, -1):
        c = coeffs[power]
        if not c:
            continue
        mono = "" if power == 0 else ("x" if power == 1 else f"x^{power}")
        terms.append(f"{c if c != 1 or not mono else ''}{mono}")
    return " + ".join(terms) or "0"
