"""Exception types shared across the package.

The CLI maps these onto process exit codes; see ``fracstefan.cli``.
"""


class FracStefanError(Exception):
    """Base class for all package-specific errors."""


class InvalidParameterError(FracStefanError, ValueError):
    """An argument is outside the validity range declared by its operation."""


class PoleError(InvalidParameterError):
    """Gamma evaluated at a nonpositive integer."""


class NonConvergentError(FracStefanError, RuntimeError):
    """Series summation hit its term cap before meeting the tail bound."""

    def __init__(self, message: str, terms: int):
        super().__init__(message)
        self.terms = terms


class NoSignChangeError(FracStefanError, RuntimeError):
    """Root bracket has no sign change, even after widening."""


class MaxIterationsError(FracStefanError, RuntimeError):
    """Root solver exhausted its iteration budget."""


class OutOfDomainError(FracStefanError, ValueError):
    """Space-time point lies beyond the free boundary."""


class NeedsMoreGridError(FracStefanError, ValueError):
    """Grid index too close to t=0 for the finite-difference stencil."""


class ExtrapolationUnstableError(FracStefanError, RuntimeError):
    """Boundary-offset sequence does not converge under extrapolation."""
