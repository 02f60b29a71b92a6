"""Exception types shared across the package."""


class FanhodgeError(Exception):
    """Base class for all package-specific errors."""


class DependentInput(FanhodgeError):
    """Vectors expected to be linearly independent are not."""


class UnsaturatedWindow(FanhodgeError):
    """An identification maps window data to a cone missing from the window."""


class NonFreeAction(FanhodgeError):
    """An identification fixes a cone while permuting its rays nontrivially."""


class SncConditionViolated(FanhodgeError):
    """A cone has two rays in the same equivalence class."""


class NotAComplex(FanhodgeError):
    """Differentials do not compose to zero."""


class NotEquidimensional(FanhodgeError):
    """A simplex is not a face of any top-dimensional simplex."""


class MissingInput(FanhodgeError):
    """A report needs a dimension that was not supplied."""


class InvalidParams(FanhodgeError):
    """Preset parameters are out of range."""
