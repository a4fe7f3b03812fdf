"""C.I.0 ideals and Wiebe matrices over Artinian local algebras."""

from ._ci0 import (
    Algebra,
    ContextMismatch,
    Error,
    Inconclusive,
    InputError,
    InvariantViolation,
    NotApplicable,
    NotLocal,
    NotZeroDimensional,
    ParseError,
    PreconditionError,
    operations,
    run_suite,
)

__all__ = [
    "Algebra",
    "ContextMismatch",
    "Error",
    "Inconclusive",
    "InputError",
    "InvariantViolation",
    "NotApplicable",
    "NotLocal",
    "NotZeroDimensional",
    "ParseError",
    "PreconditionError",
    "operations",
    "run_suite",
]
