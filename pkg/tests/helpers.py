from pathlib import Path

from plateau.engine.finite_field import ExtField, make_field
from plateau.engine.walsh import FunctionSpec
from plateau.models.spec import load_spec

SPECS = Path(__file__).resolve().parent.parent / "specs"

# Primitive moduli, constant term first.
MODULI = {
    (2, 3): [1, 1, 0, 1],
    (2, 4): [1, 1, 0, 0, 1],
    (2, 5): [1, 0, 1, 0, 0, 1],
    (2, 6): [1, 1, 0, 0, 0, 0, 1],
    (3, 2): [2, 2, 1],
    (3, 3): [1, 2, 0, 1],
    (3, 4): [2, 0, 0, 2, 1],
    (3, 5): [1, 2, 0, 0, 0, 1],
    (5, 2): [2, 4, 1],
    (5, 3): [3, 3, 0, 1],
}


def gf(p: int, m: int) -> ExtField:
    return make_field(p, m, MODULI[(p, m)])


def trace_poly(field: ExtField, *terms: tuple[int | None, int]) -> FunctionSpec:
    """Tr(Σ ζ^c x^e) from (c, e) pairs; c=None is a zero coefficient."""
    return FunctionSpec(field, tuple((field.element(c), e) for c, e in terms))


def load(name: str) -> FunctionSpec:
    return load_spec(SPECS / name).to_spec()
