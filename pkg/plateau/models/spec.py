"""
Pydantic model for function-spec JSON.

Designed for resilience:
- coefficient tokens accept ``"0"``, ``"1"``, ``"z"`` and ``"z^k"``
- extra fields are ignored (notes, provenance, ...)
- field validation (primality, irreducibility, primitivity) happens when the
  model is turned into an engine ``FunctionSpec``

Example::

    {
        "p": 3, "m": 3, "modulus": [1, 2, 0, 1],
        "terms": [["z", 2], ["z^7", 4], ["z^7", 3], ["z", 13]]
    }
"""

import hashlib
import re
from pathlib import Path

from pydantic import BaseModel, Field, ValidationError, field_validator

from plateau.engine.finite_field import make_field
from plateau.engine.walsh import FunctionSpec
from plateau.exceptions import FieldTooLarge, SpecParseError

_TOKEN = re.compile(r"^(?:0|1|z(?:\^(\d+))?)$")


def parse_coefficient(token: str) -> int | None:
    """Exponent of ζ named by ``token``; None for zero."""
    match = _TOKEN.match(token.strip())
    if match is None:
        raise ValueError(f"coefficient token {token!r} is not 0, 1, z or z^k")
    text = token.strip()
    if text == "0":
        return None
    if text == "1":
        return 0
    return int(match.group(1) or 1)


def format_coefficient(exponent: int | None) -> str:
    if exponent is None:
        return "0"
    if exponent == 0:
        return "1"
    return "z" if exponent == 1 else f"z^{exponent}"


class FunctionSpecModel(BaseModel):
    """A field plus the terms of Ψ; the analysed function is Tr(Ψ)."""

    p: int = Field(..., ge=2, description="Characteristic (prime).")
    m: int = Field(..., ge=1, description="Extension degree.")
    modulus: list[int] = Field(
        ...,
        min_length=2,
        description="Primitive modulus, coefficients constant-term first.",
    )
    terms: list[tuple[str, int]] = Field(
        default_factory=list,
        description="[coefficient token, exponent] pairs; exponents are positive.",
    )

    model_config = {"extra": "ignore"}

    @field_validator("terms")
    @classmethod
    def _check_terms(cls, terms: list[tuple[str, int]]) -> list[tuple[str, int]]:
        for token, exponent in terms:
            parse_coefficient(token)
            if exponent < 1:
                raise ValueError(f"exponent {exponent} must be positive")
        return terms

    def fingerprint(self) -> str:
        """Stable hash of the canonical JSON form."""
        canonical = self.model_dump_json(include={"p", "m", "modulus", "terms"})
        return hashlib.sha256(canonical.encode()).hexdigest()

    def to_spec(self, max_field_size: int | None = None) -> FunctionSpec:
        if max_field_size is not None and self.p**self.m > max_field_size:
            raise FieldTooLarge(f"p^m = {self.p ** self.m} exceeds the limit {max_field_size}")
        field = make_field(self.p, self.m, self.modulus)
        terms = tuple(
            (field.element(parse_coefficient(token)), exponent) for token, exponent in self.terms
        )
        return FunctionSpec(field=field, terms=terms)

    @classmethod
    def from_spec(cls, spec: FunctionSpec) -> "FunctionSpecModel":
        field = spec.field
        return cls(
            p=field.p,
            m=field.m,
            modulus=list(field.modulus),
            terms=[(format_coefficient(c.exponent), e) for c, e in spec.terms],
        )


def parse_spec_text(text: str) -> FunctionSpecModel:
    try:
        return FunctionSpecModel.model_validate_json(text)
    except ValidationError as exc:
        raise SpecParseError(f"invalid function spec: {exc}") from exc


def load_spec(path: str | Path) -> FunctionSpecModel:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecParseError(f"cannot read {path}: {exc}") from exc
    return parse_spec_text(text)
