"""Exception hierarchy."""

import numpy as np


class AdaquadError(Exception):
    """Base class for all library errors."""


class InvalidArgumentError(AdaquadError, ValueError):
    pass


class DegenerateCellError(AdaquadError, ValueError):
    pass


class NonFiniteIntegrandError(AdaquadError, ArithmeticError):
    """An integrand returned NaN or inf at ``point``, or its weighted sum overflowed."""

    def __init__(self, label, point, value, message=None):
        self.label = label
        self.point = point
        self.value = value
        super().__init__(
            message or f"integrand {label!r} returned {value} at point {np.asarray(point).tolist()}")


class DepthExceededError(AdaquadError, RuntimeError):
    """Adaptive refinement hit ``max_depth`` with integrands still failing."""

    def __init__(self, cell, failing, depth):
        self.cell = cell
        self.failing = tuple(failing)
        self.depth = depth
        super().__init__(
            f"maximum depth {depth} exceeded at cell base={cell.base.tolist()} "
            f"with integrands {list(self.failing)} still above tolerance"
        )


class InsufficientDataError(AdaquadError, ValueError):
    pass


class ConfigError(AdaquadError, ValueError):
    """Invalid run configuration; ``field`` names the offending option."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")
