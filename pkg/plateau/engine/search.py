"""
Sweeps over coefficient choices for a fixed exponent template.

Each candidate Ψ(x) = Σ c_i x^{e_i} is analysed; plateaued candidates whose
report passes the filter are yielded as hits. Exhaustive sweeps walk the
coefficient tuples in lexicographic order (zero first, then ζ^0, ζ^1, ...);
random sweeps draw from a seeded generator. Either way the emission order is
deterministic, also when candidates are analysed on a thread pool.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from plateau.engine.classifier import PlateauedReport, Regularity
from plateau.engine.finite_field import ExtField
from plateau.engine.pipeline import Analysis, analyze, theory_applicable
from plateau.engine.walsh import FunctionSpec
from plateau.exceptions import BudgetExceeded, NotPlateaued, RangeViolation

logger = logging.getLogger(__name__)

ReportFilter = Callable[[PlateauedReport], bool]

# Coefficient choices are exponents of ζ; None stands for a zero coefficient.
Coefficient = int | None

_BATCH = 256


class SearchMode(str, Enum):
    EXHAUSTIVE = "exhaustive"
    RANDOM = "random"


@dataclass(frozen=True, eq=False)
class SearchHit:
    spec: FunctionSpec
    analysis: Analysis

    @property
    def report(self) -> PlateauedReport:
        return self.analysis.report


def make_filter(
    regularity: Iterable[Regularity] | None = None,
    r: int | None = None,
    theory_ready: bool = False,
) -> ReportFilter:
    """Conjunction of the usual search criteria."""
    wanted = set(regularity) if regularity else None

    def accept(report: PlateauedReport) -> bool:
        if wanted is not None and report.regularity not in wanted:
            return False
        if r is not None and report.r != r:
            return False
        return not theory_ready or theory_applicable(report)

    return accept


def _candidates(
    field: ExtField,
    choices: Sequence[Sequence[Coefficient]],
    mode: SearchMode,
    count: int,
    seed: int,
) -> Iterator[tuple[Coefficient, ...]]:
    if mode is SearchMode.EXHAUSTIVE:
        yield from itertools.product(*choices)
        return
    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield tuple(options[int(rng.integers(len(options)))] for options in choices)


def _batched(items: Iterator, size: int) -> Iterator[list]:
    while batch := list(itertools.islice(items, size)):
        yield batch


def sweep(
    template: Sequence[int],
    field: ExtField,
    mode: SearchMode | str = SearchMode.EXHAUSTIVE,
    *,
    count: int = 0,
    seed: int = 0,
    accept: ReportFilter | None = None,
    coefficient_choices: Sequence[Sequence[Coefficient] | None] | None = None,
    budget: int | None = None,
    max_workers: int = 1,
) -> Iterator[SearchHit]:
    """
    Yield plateaued candidates accepted by ``accept``.

    ``coefficient_choices`` optionally narrows the coefficients of individual
    terms (None keeps the full range 0, ζ^0, .., ζ^{q-2}).
    """
    mode = SearchMode(mode)
    if not template:
        raise RangeViolation("exponent template is empty")
    full = [None, *range(field.order)]
    if coefficient_choices is None:
        coefficient_choices = [None] * len(template)
    if len(coefficient_choices) != len(template):
        raise RangeViolation("one coefficient choice list per template exponent is required")
    choices = [full if options is None else list(options) for options in coefficient_choices]

    size = count if mode is SearchMode.RANDOM else int(np.prod([len(c) for c in choices], dtype=object))
    if budget is not None and size > budget:
        raise BudgetExceeded(f"sweep has {size} candidates, budget is {budget}")
    logger.info(
        "Sweep starting | mode=%s | template=%s | candidates=%d | workers=%d",
        mode.value, list(template), size, max_workers,
    )

    def examine(coeffs: tuple[Coefficient, ...]) -> SearchHit | None:
        spec = FunctionSpec(
            field, tuple((field.element(c), e) for c, e in zip(coeffs, template))
        )
        try:
            analysis = analyze(spec)
        except NotPlateaued:
            return None
        if accept is not None and not accept(analysis.report):
            return None
        return SearchHit(spec=spec, analysis=analysis)

    hits = 0
    batches = _batched(_candidates(field, choices, mode, count, seed), _BATCH)
    with ThreadPoolExecutor(max_workers=max(1, max_workers)) as pool:
        for batch in batches:
            for hit in pool.map(examine, batch):
                if hit is not None:
                    hits += 1
                    yield hit
    logger.info("Sweep complete | candidates=%d | hits=%d", size, hits)
