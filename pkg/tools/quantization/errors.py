"""
Exception hierarchy shared by the quantization modules.

The CLI maps DomainError (and subclasses) to exit status 3 and
NumericalError to exit status 4.
"""


class QuantizationError(Exception):
    """Base class for every error raised by the library."""


class DomainError(QuantizationError, ValueError):
    """A parameter violates the precondition of the operation."""


class DimensionError(DomainError):
    """Lengths, shapes or grids do not agree."""


class CausalityError(DomainError):
    """A path segment is spacelike where timelike or null is required."""


class StabilityError(DomainError):
    """The time step violates the CFL bound; the solver refuses to run."""


class GaugeViolationError(DomainError):
    """The potential does not satisfy the Lorenz condition."""

    def __init__(self, residual: float, threshold: float):
        self.residual = residual
        self.threshold = threshold
        super().__init__(
            f"Lorenz gauge residual {residual:.3e} exceeds threshold {threshold:.3e}"
        )


class NumericalError(QuantizationError, ArithmeticError):
    """An eigen-solve or residual check failed."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        self.diagnostics = dict(diagnostics or {})
        if self.diagnostics:
            details = ", ".join(f"{k}={v}" for k, v in self.diagnostics.items())
            message = f"{message} ({details})"
        super().__init__(message)
