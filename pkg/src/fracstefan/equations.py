"""Transcendental equations for the front coefficients, and their solver.

Four roots matter here, all positive and all proven unique:

* ``eta``  (fractional, Caputo problem):
      2x [1 - W(-2x, -a/2, 1)] = M_{a/2}(2x) Gamma(1-a/2) / Gamma(1+a/2)
* ``xi``   (fractional, Riemann-Liouville problem):
      2x [1 - W(-2x, -a/2, 1)] = (2/a) W(-2x, -a/2, a/2)
* ``classical``:  x erf(x) = exp(-x^2) / sqrt(pi)
* ``eta0`` (zero of the classical fixed-point map's derivative):
      sqrt(pi) x exp(x^2) erfc(x) = 4 x^2

Residuals are LHS - RHS.  The left side grows linearly while each right side
decays, so every residual has exactly one sign change on (0, hi] for a
sufficiently large hi; ``solve`` brackets it and refines with bisection plus
secant acceleration until both the bracket width and the residual meet tol.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidParameterError,
    MaxIterationsError,
    NoSignChangeError,
)
from .specfun import Alpha, as_alpha, erf, erfc, gamma, wright

__all__ = [
    "RootKind",
    "RootProblem",
    "FrontCoefficient",
    "eta_residual",
    "xi_residual",
    "xi_residual_long",
    "classical_residual",
    "eta0_residual",
    "solve",
    "DEFAULT_BRACKET",
    "DEFAULT_TOL",
]

DEFAULT_BRACKET = (1e-4, 5.0)
DEFAULT_TOL = 1e-12

# Residual evaluations inside the solver run the series tighter than the
# root tolerance so series truncation never masks the sign of the residual.
_SERIES_SAFETY = 100.0
_SOLVER_MAX_TERMS = 500

# Bracket widening stops here: past x=6 the alternating series behind the
# residuals (|z| = 2x > 12) loses too many digits to cancellation in float64.
_WIDEN_CAP = 6.0

# Below this order the series constants degrade; fractional solves reject it.
_ALPHA_FLOOR = 0.05


class RootKind(enum.Enum):
    ETA_FRACTIONAL = "eta"
    XI_FRACTIONAL = "xi"
    ETA_CLASSICAL = "classical"
    ETA_ZERO_DERIV = "eta0"

    @property
    def is_fractional(self) -> bool:
        return self in (RootKind.ETA_FRACTIONAL, RootKind.XI_FRACTIONAL)


def _check_positive(x) -> None:
    if np.any(np.asarray(x) <= 0.0):
        raise InvalidParameterError("residuals are defined for x > 0 only")


def _check_alpha_fractional(a: Alpha) -> Alpha:
    # value 1 is accepted: the equations then reduce to the classical one
    if a.value <= _ALPHA_FLOOR:
        raise InvalidParameterError(
            f"fractional order below {_ALPHA_FLOOR} is outside the supported range"
        )
    return a


def eta_residual(x, alpha: Alpha | float):
    """Residual of the Caputo-problem front equation at x > 0."""
    a = _check_alpha_fractional(as_alpha(alpha))
    _check_positive(x)
    x = np.asarray(x, dtype=float)
    rho = -0.5 * a.value
    lhs = 2.0 * x * (1.0 - wright(-2.0 * x, rho, 1.0))
    rhs = wright(-2.0 * x, rho, 1.0 + rho) * (
        gamma(1.0 + rho) / gamma(1.0 - rho)
    )
    out = lhs - rhs
    return float(out) if out.ndim == 0 else out


def xi_residual(x, alpha: Alpha | float):
    """Residual of the Riemann-Liouville-problem front equation (short form)."""
    a = _check_alpha_fractional(as_alpha(alpha))
    _check_positive(x)
    x = np.asarray(x, dtype=float)
    rho = -0.5 * a.value
    lhs = 2.0 * x * (1.0 - wright(-2.0 * x, rho, 1.0))
    rhs = (2.0 / a.value) * wright(-2.0 * x, rho, 0.5 * a.value)
    out = lhs - rhs
    return float(out) if out.ndim == 0 else out


def xi_residual_long(x, alpha: Alpha | float):
    """Same root as xi_residual, written without collapsing the Wright terms."""
    a = _check_alpha_fractional(as_alpha(alpha))
    _check_positive(x)
    x = np.asarray(x, dtype=float)
    rho = -0.5 * a.value
    w1 = wright(-2.0 * x, rho, 1.0)
    lhs = 2.0 * x * (1.0 - w1)
    rhs = 2.0 * x * w1 + wright(-2.0 * x, rho, 1.0 + 0.5 * a.value)
    out = lhs - rhs
    return float(out) if out.ndim == 0 else out


def classical_residual(x):
    """Residual of x erf(x) = exp(-x^2)/sqrt(pi)."""
    _check_positive(x)
    x = np.asarray(x, dtype=float)
    out = x * erf(x) - np.exp(-(x**2)) / math.sqrt(math.pi)
    return float(out) if out.ndim == 0 else out


def eta0_residual(x):
    """Residual of sqrt(pi) x exp(x^2) erfc(x) = 4 x^2.

    Written via erfcx(x) = exp(x^2) erfc(x) to stay stable for larger x.
    """
    _check_positive(x)
    x = np.asarray(x, dtype=float)
    from scipy.special import erfcx

    out = math.sqrt(math.pi) * x * erfcx(x) - 4.0 * x**2
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class RootProblem:
    """One root-finding task: which equation, at which order, where to look."""

    kind: RootKind
    alpha: Alpha | None = None
    bracket: tuple[float, float] = DEFAULT_BRACKET
    tol: float = DEFAULT_TOL
    max_iter: int = 200

    def __post_init__(self):
        lo, hi = self.bracket
        if not (0.0 <= lo < hi):
            raise InvalidParameterError(f"bracket must satisfy 0 <= lo < hi, got {self.bracket}")
        if not (self.tol > 0.0):
            raise InvalidParameterError(f"tol must be positive, got {self.tol}")
        if self.kind.is_fractional:
            if self.alpha is None:
                raise InvalidParameterError(f"kind {self.kind.value} needs alpha")
            if self.alpha.value >= 1.0:
                raise InvalidParameterError(
                    "fractional kinds need alpha < 1; use the classical kind at 1"
                )
            _check_alpha_fractional(self.alpha)

    def residual(self, x):
        """The residual function this problem solves."""
        if self.kind is RootKind.ETA_FRACTIONAL:
            return eta_residual(x, self.alpha)
        if self.kind is RootKind.XI_FRACTIONAL:
            return xi_residual(x, self.alpha)
        if self.kind is RootKind.ETA_CLASSICAL:
            return classical_residual(x)
        return eta0_residual(x)


@dataclass(frozen=True)
class FrontCoefficient:
    """A solved front coefficient with its solve diagnostics."""

    kind: RootKind
    alpha: Alpha
    value: float
    residual: float
    iterations: int
    bracket: tuple[float, float]

    def __post_init__(self):
        if not (self.value > 0.0):
            raise InvalidParameterError(f"front coefficient must be positive, got {self.value}")


def solve(problem: RootProblem) -> FrontCoefficient:
    """Bracketed root solve: bisection with secant acceleration.

    Terminates when the bracket width and the best residual magnitude are
    both <= problem.tol.  Widens the upper end by doubling (capped) if the
    initial bracket shows no sign change.
    """
    from .specfun import SeriesAccuracy

    tol = problem.tol
    series_tol = max(tol / _SERIES_SAFETY, 1e-15)
    acc = SeriesAccuracy(tol=series_tol, max_terms=_SOLVER_MAX_TERMS)

    def f(x: float) -> float:
        return _residual_with_accuracy(problem, x, acc)

    alpha = problem.alpha if problem.kind.is_fractional else Alpha(1.0)
    lo, hi = problem.bracket
    lo = max(lo, 1e-300)  # residuals need x > 0
    flo, fhi = f(lo), f(hi)
    while flo * fhi > 0.0 and hi < _WIDEN_CAP:
        hi = min(2.0 * hi, _WIDEN_CAP)
        fhi = f(hi)
    if flo * fhi > 0.0:
        raise NoSignChangeError(
            f"no sign change on ({lo:g}, {hi:g}) for kind={problem.kind.value}"
        )
    if flo == 0.0 or fhi == 0.0:
        x0 = lo if flo == 0.0 else hi
        return FrontCoefficient(problem.kind, alpha, x0, 0.0, 0, (x0, x0))

    best_x, best_f = (lo, flo) if abs(flo) <= abs(fhi) else (hi, fhi)
    iterations = 0
    while iterations < problem.max_iter:
        width = hi - lo
        if width <= tol and abs(best_f) <= tol:
            break
        # secant proposal from the bracket endpoints, safeguarded to the
        # interior; otherwise fall back to the midpoint
        denom = fhi - flo
        if denom != 0.0:
            x_new = hi - fhi * (hi - lo) / denom
        else:
            x_new = 0.5 * (lo + hi)
        margin = 0.01 * width
        if not (lo + margin < x_new < hi - margin):
            x_new = 0.5 * (lo + hi)
        f_new = f(x_new)
        iterations += 1
        if abs(f_new) < abs(best_f):
            best_x, best_f = x_new, f_new
        if f_new == 0.0:
            lo = hi = x_new
            flo = fhi = 0.0
            continue
        if flo * f_new < 0.0:
            hi, fhi = x_new, f_new
        else:
            lo, flo = x_new, f_new
        # guarantee progress: if the secant stalled on one side, bisect
        if hi - lo > 0.75 * width:
            x_mid = 0.5 * (lo + hi)
            f_mid = f(x_mid)
            iterations += 1
            if abs(f_mid) < abs(best_f):
                best_x, best_f = x_mid, f_mid
            if flo * f_mid < 0.0:
                hi, fhi = x_mid, f_mid
            else:
                lo, flo = x_mid, f_mid
    else:
        raise MaxIterationsError(
            f"solver for {problem.kind.value} did not reach tol={tol} in "
            f"{problem.max_iter} iterations (bracket width {hi - lo:g}, "
            f"best residual {best_f:g})"
        )

    return FrontCoefficient(
        kind=problem.kind,
        alpha=alpha,
        value=best_x,
        residual=best_f,
        iterations=iterations,
        bracket=(lo, hi),
    )


def _residual_with_accuracy(problem: RootProblem, x: float, acc) -> float:
    """Evaluate the problem residual with a sharpened series accuracy."""
    if problem.kind is RootKind.ETA_CLASSICAL:
        return classical_residual(x)
    if problem.kind is RootKind.ETA_ZERO_DERIV:
        return eta0_residual(x)
    a = problem.alpha
    rho = -0.5 * a.value
    lhs = 2.0 * x * (1.0 - wright(-2.0 * x, rho, 1.0, acc))
    if problem.kind is RootKind.ETA_FRACTIONAL:
        rhs = wright(-2.0 * x, rho, 1.0 + rho, acc) * (
            gamma(1.0 + rho) / gamma(1.0 - rho)
        )
    else:
        rhs = (2.0 / a.value) * wright(-2.0 * x, rho, 0.5 * a.value, acc)
    return lhs - rhs
