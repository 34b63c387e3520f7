"""
Exception hierarchy for the plateau engine.

Every error raised by the engine derives from ``PlateauError``. Three families
carry the CLI exit code and HTTP status they map to, so the front ends never
need their own lookup tables:

- ``InputError``: malformed specs, invalid fields, out-of-range parameters.
- ``AnalysisError``: a mathematical premise failed (not plateaued, a mismatch
  between a predicted and a measured quantity, ...).
- ``BudgetExceeded``: an enumeration would exceed the configured budget.
"""

import re

_CAMEL = re.compile(r"(?<!^)(?=[A-Z])")


class PlateauError(Exception):
    """Base class for every engine error."""

    exit_code: int = 2
    status_code: int = 400

    @property
    def code(self) -> str:
        """Snake-case error name used in JSON error bodies."""
        return _CAMEL.sub("_", type(self).__name__).lower()


# ── Input errors ──────────────────────────────────────────────────────


class InputError(PlateauError):
    exit_code = 2
    status_code = 422


class SpecParseError(InputError):
    pass


class NotPrime(InputError):
    pass


class InvalidModulus(InputError):
    pass


class Reducible(InputError):
    pass


class NotPrimitive(InputError):
    pass


class FieldTooLarge(InputError):
    pass


class FieldMismatch(InputError):
    pass


class DivisionByZero(InputError):
    pass


class OrderMismatch(InputError):
    pass


class InvalidAutomorphism(InputError):
    pass


class LengthMismatch(InputError):
    pass


class ParityViolation(InputError):
    pass


class RangeViolation(InputError):
    pass


class InvalidRequest(InputError):
    """Query parameters or a request body outside the function-spec schema."""


# ── Analysis errors ───────────────────────────────────────────────────


class AnalysisError(PlateauError):
    exit_code = 1
    status_code = 409


class NotPlateaued(AnalysisError):
    pass


class NotRational(AnalysisError):
    pass


class NoCanonicalForm(AnalysisError):
    pass


class NonRationalSum(AnalysisError):
    pass


class NotWeaklyRegular(AnalysisError):
    pass


class MismatchAt(AnalysisError):
    """An exact identity failed at element index ``index``."""

    def __init__(self, index: int, detail: str = "") -> None:
        self.index = index
        message = f"identity fails at element index {index}"
        super().__init__(f"{message}: {detail}" if detail else message)


# ── Budget ────────────────────────────────────────────────────────────


class BudgetExceeded(PlateauError):
    exit_code = 3
    status_code = 413
