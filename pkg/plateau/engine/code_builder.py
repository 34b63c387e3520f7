"""
Linear codes C_ψ1 = {c_{α,β} : α ∈ F_p, β ∈ F_{p^m}} and their weights.

c_{α,β} = (α·ψ1(x) - Tr(β x))_{x ∈ F_{p^m}^*}

Coordinates run over the nonzero elements in index order (ζ^0, ζ^1, ...).
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Mapping

import numpy as np

from plateau.engine.cyclotomic import CycInt
from plateau.engine.finite_field import FieldElement
from plateau.engine.walsh import FunctionSpec, PAryFunction, WalshSpectrum, evaluate
from plateau.exceptions import AnalysisError, BudgetExceeded, NonRationalSum, NotRational

logger = logging.getLogger(__name__)


def rank_mod_p(matrix: np.ndarray, p: int) -> int:
    """Rank over F_p by Gauss-Jordan elimination."""
    mat = np.array(matrix, dtype=np.int64) % p
    rows, cols = mat.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        pivots = np.nonzero(mat[rank:, col])[0]
        if not len(pivots):
            continue
        pivot = int(pivots[0]) + rank
        if pivot != rank:
            mat[[rank, pivot]] = mat[[pivot, rank]]
        mat[rank] = (mat[rank] * pow(int(mat[rank, col]), -1, p)) % p
        for r in range(rows):
            if r != rank and mat[r, col]:
                mat[r] = (mat[r] - mat[r, col] * mat[rank]) % p
        rank += 1
    return rank


@dataclass(frozen=True, eq=False)
class LinearCode:
    spec: FunctionSpec
    psi: PAryFunction
    generator: np.ndarray  # (m + 1) x n: ψ1 row, then Tr(ζ^j x) rows
    k: int

    @property
    def p(self) -> int:
        return self.spec.field.p

    @property
    def m(self) -> int:
        return self.spec.field.m

    @property
    def n(self) -> int:
        return self.spec.field.order

    @property
    def expected_k(self) -> int:
        return self.m + 1

    @property
    def degenerate(self) -> bool:
        return self.k < self.expected_k

    @property
    def parameters(self) -> str:
        """``[n,k]`` for binary codes, ``[n,k]_p`` otherwise."""
        text = f"[{self.n},{self.k}]"
        return text if self.p == 2 else f"{text}_{self.p}"

    def codeword(self, alpha: int, beta: FieldElement) -> np.ndarray:
        trace = self.spec.field.trace_row(beta)
        return (alpha * self.psi.table[1:] - trace[1:]) % self.p


@dataclass(frozen=True)
class WeightDistribution:
    """Sorted (weight, multiplicity) rows."""

    rows: tuple[tuple[int, int], ...]

    @classmethod
    def from_mapping(cls, counts: Mapping[int, int]) -> WeightDistribution:
        return cls(tuple(sorted((int(w), int(a)) for w, a in counts.items() if a)))

    @property
    def total(self) -> int:
        return sum(a for _, a in self.rows)

    def as_dict(self) -> dict[int, int]:
        return dict(self.rows)


def build_code(spec: FunctionSpec, psi: PAryFunction | None = None) -> LinearCode:
    field = spec.field
    psi = psi if psi is not None else evaluate(spec)
    rows = [psi.table[1:]] + [field.trace_row(field.element(j))[1:] for j in range(field.m)]
    generator = np.array(rows, dtype=np.int64) % field.p
    generator.flags.writeable = False
    k = rank_mod_p(generator, field.p)

    code = LinearCode(spec=spec, psi=psi, generator=generator, k=k)
    if code.degenerate:
        logger.warning(
            "Degenerate dimension | %s | k=%d | expected=%d",
            spec.describe(), k, code.expected_k,
        )
    return code


# ── Enumeration ───────────────────────────────────────────────────────


def enumeration_cost(code: LinearCode) -> int:
    return code.p ** (code.m + 1) * code.n


def pair_weights(code: LinearCode, budget: int | None = None, max_workers: int = 1) -> np.ndarray:
    """Shape (p, q): Hamming weight of c_{α,β} indexed by α and β's index."""
    cost = enumeration_cost(code)
    if budget is not None and cost > budget:
        raise BudgetExceeded(f"enumeration needs {cost} operations, budget is {budget}")

    p = code.p
    traces = code.spec.field.trace_product_table[:, 1:]
    psi = code.psi.table[1:]

    def weights_for(alpha: int) -> np.ndarray:
        return np.count_nonzero((alpha * psi[None, :] - traces) % p, axis=1)

    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            rows = list(pool.map(weights_for, range(p)))
    else:
        rows = [weights_for(alpha) for alpha in range(p)]
    return np.stack(rows)


def distribution_from_weights(code: LinearCode, weights: np.ndarray) -> WeightDistribution:
    """
    Collapse per-(α,β) weights into a distribution over distinct codewords.

    (α,β) -> c_{α,β} is linear with a kernel of size p^{m+1-k}, so every
    codeword is hit that many times.
    """
    repeat = code.p ** (code.expected_k - code.k)
    values, counts = np.unique(weights, return_counts=True)
    return WeightDistribution.from_mapping(
        {int(w): int(c) // repeat for w, c in zip(values, counts)}
    )


def weight_distribution(
    code: LinearCode, budget: int | None = None, max_workers: int = 1
) -> WeightDistribution:
    weights = pair_weights(code, budget=budget, max_workers=max_workers)
    distribution = distribution_from_weights(code, weights)
    logger.info(
        "Weight enumeration complete | code=%s | weights=%d",
        code.parameters, len(distribution.rows),
    )
    return distribution


def weight_via_walsh(s: WalshSpectrum, alpha: int, beta: FieldElement) -> int:
    """
    wt(c_{α,β}) from the spectrum alone:

    p^m - p^{m-1} - (1/p) Σ_{ω ∈ F_p^*} σ_{ωα}(W_f(α^{-1} β))
    """
    field = s.field
    p, q = field.p, field.q
    alpha %= p
    if alpha == 0:
        return 0 if beta.is_zero else q - q // p

    point = beta * field.from_int(pow(alpha, -1, p))
    value = s.values[point.index]
    total = sum((value.conjugate(omega * alpha) for omega in range(1, p)), CycInt.zero(p))
    try:
        amount = total.rational_value()
    except NotRational as exc:
        raise NonRationalSum(f"Galois orbit sum at index {point.index} is {total}") from exc
    if amount % p:
        raise NonRationalSum(f"Galois orbit sum {amount} is not divisible by p={p}")
    return q - q // p - amount // p


def walsh_weights(code: LinearCode, s: WalshSpectrum) -> np.ndarray:
    """``pair_weights`` computed from the spectrum instead of the codewords."""
    field = s.field
    return np.array(
        [[weight_via_walsh(s, alpha, field.element_at(b)) for b in range(field.q)] for alpha in range(code.p)],
        dtype=np.int64,
    )


def distribution_via_walsh(code: LinearCode, s: WalshSpectrum) -> WeightDistribution:
    return distribution_from_weights(code, walsh_weights(code, s))


def min_max_weights(wd: WeightDistribution) -> tuple[int, int]:
    nonzero = [w for w, a in wd.rows if w > 0 and a > 0]
    if not nonzero:
        raise AnalysisError("distribution has no nonzero codewords")
    return min(nonzero), max(nonzero)


def enumerator_string(wd: WeightDistribution) -> str:
    """1 + A_{w1} y^{w1} + ... rendered as ``1+3y^8+59y^16+1y^24``."""
    return "+".join(str(a) if w == 0 else f"{a}y^{w}" for w, a in wd.rows)


# ── Codeword emission ─────────────────────────────────────────────────


def codewords(code: LinearCode) -> Iterator[tuple[int, int, np.ndarray]]:
    """Lazily yield (α, β index, codeword) for every pair."""
    field = code.spec.field
    for alpha in range(code.p):
        for index in range(field.q):
            yield alpha, index, code.codeword(alpha, field.element_at(index))


def format_codeword(word: np.ndarray, p: int) -> str:
    if p <= 10:
        return "".join(str(int(c)) for c in word)
    return " ".join(str(int(c)) for c in word)
