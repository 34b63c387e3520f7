"""
Minimal codewords.

A nonzero codeword a is minimal when the only codewords whose support lies
inside supp(a) are its own scalar multiples. A code is minimal when every
nonzero codeword is. Supports are handled as Python int bitmasks.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from plateau.engine.code_builder import LinearCode, WeightDistribution, codewords, min_max_weights
from plateau.engine.theory import ParityCase
from plateau.exceptions import BudgetExceeded, LengthMismatch

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MinimalityVerdict:
    all_minimal: bool
    representatives: int
    # (α, β index) labels of a covering pair: the first covers the second
    witness: tuple[tuple[int, int], tuple[int, int]] | None = None


def covers(a: Sequence[int], b: Sequence[int]) -> bool:
    """True when supp(b) ⊆ supp(a)."""
    if len(a) != len(b):
        raise LengthMismatch(f"codewords of length {len(a)} and {len(b)}")
    a_arr, b_arr = np.asarray(a), np.asarray(b)
    return not np.any((b_arr != 0) & (a_arr == 0))


def ashikhmin_barg(wd: WeightDistribution, p: int) -> bool:
    """Sufficient condition (p-1)/p < w_min/w_max, in integer arithmetic."""
    w_min, w_max = min_max_weights(wd)
    return (p - 1) * w_max < p * w_min


def range_guarantee(p: int, m: int, r: int, case: ParityCase) -> bool:
    """Parameter ranges under which the tabulated codes satisfy ``ashikhmin_barg``."""
    if case is ParityCase.ODD_ODD:
        return m >= 3 and 0 <= r <= m - 3
    return m >= 4 and 0 <= r <= m - 4


def _support_mask(word: np.ndarray) -> int:
    mask = 0
    for position in np.flatnonzero(word):
        mask |= 1 << int(position)
    return mask


def _normalized(word: np.ndarray, p: int) -> tuple[int, ...]:
    """Scale so the first nonzero coordinate is 1."""
    lead = int(word[np.flatnonzero(word)[0]])
    return tuple(int(c) for c in (word * pow(lead, -1, p)) % p)


def all_minimal_exhaustive(code: LinearCode, budget: int | None = None) -> MinimalityVerdict:
    """Compare every pair of scalar classes of nonzero codewords."""
    total = code.p ** code.expected_k
    if budget is not None and total > budget:
        raise BudgetExceeded(f"minimality check needs {total} codewords, budget is {budget}")

    classes: dict[tuple[int, ...], tuple[int, int]] = {}
    for alpha, index, word in codewords(code):
        if not word.any():
            continue
        classes.setdefault(_normalized(word, code.p), (alpha, index))

    reps = sorted(
        ((_support_mask(np.array(word)), label) for word, label in classes.items()),
        key=lambda item: item[0].bit_count(),
    )
    for i, (small, small_label) in enumerate(reps):
        for big, big_label in reps[i + 1:]:
            if small & ~big == 0:
                logger.debug("Non-minimal codeword | %s covers %s", big_label, small_label)
                return MinimalityVerdict(
                    all_minimal=False, representatives=len(reps), witness=(big_label, small_label)
                )
    return MinimalityVerdict(all_minimal=True, representatives=len(reps))
