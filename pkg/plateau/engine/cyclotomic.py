"""
Exact arithmetic in Z[ξ_p], ξ_p = e^{2πi/p}.

Values are stored on the integral basis ξ^0 .. ξ^{p-2}. Sums of p-th roots of
unity arrive as "raw" length-p count vectors Σ raw[j] ξ^j and are reduced with
ξ^{p-1} = -(1 + ξ + .. + ξ^{p-2}). For p = 2 the basis is {1} and ξ = -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from sympy import isprime

from plateau.engine.finite_field import legendre
from plateau.exceptions import (
    AnalysisError,
    InvalidAutomorphism,
    NotPrime,
    NotRational,
    OrderMismatch,
)


@dataclass(frozen=True)
class CycInt:
    """An element Σ coeffs[i] ξ^i of Z[ξ_p] in canonical coordinates."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.p - 1:
            raise OrderMismatch(f"Z[ξ_{self.p}] needs {self.p - 1} coordinates, got {len(self.coeffs)}")

    # ── Constructors ──────────────────────────────────────────────────

    @classmethod
    def from_raw(cls, p: int, raw: Sequence[int]) -> CycInt:
        """Reduce Σ raw[j] ξ^j (j = 0 .. p-1) to canonical coordinates."""
        values = [int(c) for c in raw]
        if len(values) != p:
            raise OrderMismatch(f"expected {p} root-of-unity counts, got {len(values)}")
        last = values[-1]
        return cls(p, tuple(c - last for c in values[:-1]))

    @classmethod
    def from_int(cls, p: int, n: int) -> CycInt:
        return cls(p, (int(n),) + (0,) * (p - 2))

    @classmethod
    def zero(cls, p: int) -> CycInt:
        return cls.from_int(p, 0)

    @classmethod
    def one(cls, p: int) -> CycInt:
        return cls.from_int(p, 1)

    def raw(self) -> list[int]:
        return list(self.coeffs) + [0]

    # ── Arithmetic ────────────────────────────────────────────────────

    def _lift(self, other: CycInt | int) -> CycInt:
        if isinstance(other, int):
            return CycInt.from_int(self.p, other)
        if other.p != self.p:
            raise OrderMismatch(f"cannot combine Z[ξ_{self.p}] with Z[ξ_{other.p}]")
        return other

    def __add__(self, other: CycInt | int) -> CycInt:
        other = self._lift(other)
        return CycInt(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> CycInt:
        return CycInt(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other: CycInt | int) -> CycInt:
        return self + (-self._lift(other))

    def __rsub__(self, other: int) -> CycInt:
        return self._lift(other) - self

    def __mul__(self, other: CycInt | int) -> CycInt:
        if isinstance(other, int):
            return CycInt(self.p, tuple(a * other for a in self.coeffs))
        other = self._lift(other)
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.raw()):
            if a:
                for j, b in enumerate(other.raw()):
                    if b:
                        out[(i + j) % p] += a * b
        return CycInt.from_raw(p, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> CycInt:
        if n < 0:
            raise ValueError("negative powers are not defined in Z[ξ_p]")
        result, base = CycInt.one(self.p), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def rotate(self, k: int) -> CycInt:
        """Multiply by ξ^k."""
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.raw()):
            out[(i + k) % p] += a
        return CycInt.from_raw(p, out)

    def conjugate(self, t: int) -> CycInt:
        """Apply the Galois automorphism σ_t: ξ -> ξ^t."""
        p = self.p
        if t % p == 0:
            raise InvalidAutomorphism(f"σ_{t} is not an automorphism of Q(ξ_{p})")
        out = [0] * p
        for i, a in enumerate(self.raw()):
            out[(i * t) % p] += a
        return CycInt.from_raw(p, out)

    def abs_square(self) -> CycInt:
        """a · conj(a); always rational."""
        return self * self.conjugate(self.p - 1)

    def divide_exact(self, n: int) -> CycInt:
        if any(a % n for a in self.coeffs):
            raise AnalysisError(f"{self} is not divisible by {n}")
        return CycInt(self.p, tuple(a // n for a in self.coeffs))

    # ── Queries ───────────────────────────────────────────────────────

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> int:
        if not self.is_rational:
            raise NotRational(f"{self} is not in Z")
        return self.coeffs[0]

    def __str__(self) -> str:
        parts = []
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            if i == 0:
                parts.append(str(a))
            else:
                mono = "ξ" if i == 1 else f"ξ^{i}"
                parts.append(mono if a == 1 else ("-" + mono if a == -1 else f"{a}{mono}"))
        return " + ".join(parts).replace("+ -", "- ") or "0"


def root_of_unity(p: int, j: int) -> CycInt:
    raw = [0] * p
    raw[j % p] = 1
    return CycInt.from_raw(p, raw)


def from_exponent_counts(p: int, counts: Sequence[int]) -> CycInt:
    """Σ_j counts[j] ξ^j."""
    return CycInt.from_raw(p, counts)


@lru_cache(maxsize=None)
def gauss_sum(p: int) -> CycInt:
    """Quadratic Gauss sum G = Σ_{j=1}^{p-1} (j/p) ξ^j."""
    if p == 2 or not isprime(p):
        raise NotPrime(f"Gauss sum needs an odd prime, got p={p}")
    raw = [0] + [legendre(j, p) for j in range(1, p)]
    return CycInt.from_raw(p, raw)


def match_unit_multiple(value: CycInt, base: CycInt) -> tuple[int, int] | None:
    """
    Find ``(sign, j)`` with ``value == sign · base · ξ^j``.

    Returns None when ``value`` is not such a multiple. For p = 2 the
    rotation is trivial up to sign, so j is always 0.
    """
    p = value.p
    rotations = 1 if p == 2 else p
    for j in range(rotations):
        candidate = base.rotate(j)
        if value == candidate:
            return 1, j
        if value == -candidate:
            return -1, j
    return None
