"""Polyhedral fan subdivision, quotient complexes, and weight-filtration
bookkeeping for toroidal compactifications, over exact rational arithmetic."""

__version__ = "0.1.0"

from .errors import (
    DependentInput,
    FanhodgeError,
    InvalidParams,
    MissingInput,
    NonFreeAction,
    NotAComplex,
    NotEquidimensional,
    SncConditionViolated,
    UnsaturatedWindow,
)

__all__ = [
    "__version__",
    "FanhodgeError",
    "DependentInput",
    "UnsaturatedWindow",
    "NonFreeAction",
    "SncConditionViolated",
    "NotAComplex",
    "NotEquidimensional",
    "MissingInput",
    "InvalidParams",
]
