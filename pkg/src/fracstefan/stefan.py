"""Closed-form self-similar solutions of the two fractional Stefan problems.

Three one-phase melting solutions on the half line with unit boundary
temperature and front starting at the origin:

* Caputo form: temperature
      w(x,t) = 1 - [1 - W(-x t^{-a/2}, -a/2, 1)] / [1 - W(-2 eta, -a/2, 1)]
  with front r(t) = 2 eta t^{a/2};
* Riemann-Liouville form: same shape with xi in place of eta,
  front s(t) = 2 xi t^{a/2};
* classical (a = 1): w = 1 - erf(x / (2 sqrt(t))) / erf(eta_1),
  front 2 eta_1 sqrt(t).

Everything depends on (x, t) only through x t^{-a/2}.  The residual
routines check the governing equations along paths independent of the
closed forms: the time-fractional derivative through the L1 quadrature
oracle, space derivatives through finite differences, and the delicate
Riemann-Liouville interface condition through interior offsets with
extrapolation onto the moving boundary.

Time histories at a fixed position x use the closed form for all times,
including times before the front reaches x: the formulas extend
analytically across the front, the extension decays to zero as t -> 0+,
and it is the object the memory integrals of the governing equations act
on.  (Zero-extending the gradient ahead of the front instead makes the
interface limit diverge like (t - tau0)^(a-1): the step it introduces at
the front-crossing time tau0 has no finite fractional derivative there.)
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import frcalc
from .equations import FrontCoefficient, RootKind, RootProblem, solve
from .errors import (
    ExtrapolationUnstableError,
    InvalidParameterError,
    OutOfDomainError,
)
from .specfun import Alpha, SeriesAccuracy, as_alpha, erf, gamma, wright

__all__ = [
    "SolutionKind",
    "SpaceTimePoint",
    "SelfSimilarSolution",
    "caputo_solution",
    "riemann_liouville_solution",
    "classical_solution",
    "pde_residual_caputo",
    "stefan_condition_residual_caputo",
    "stefan_condition_residual_rl",
]

# residual checks run the series tighter than the default so finite
# differences of temperature do not amplify series truncation noise
_FD_ACCURACY = SeriesAccuracy(tol=1e-14, max_terms=500)
_FD_STEP_X = 2e-4
_FD_STEP_T = 1e-5
_MIN_RESIDUAL_TIME = 0.25
_DOMAIN_SLACK = 1e-12

# Similarity arguments past this point make the alternating Wright series
# pure cancellation noise in float64, while the true factor is below 1e-16;
# histories treat the Wright factor as exactly 0 there.
_SIMILARITY_CUTOFF = 12.0


class SolutionKind(enum.Enum):
    CAPUTO_P1 = "caputo"
    RIEMANN_LIOUVILLE_P2 = "rl"
    CLASSICAL = "classical"


_ROOT_FOR_KIND = {
    SolutionKind.CAPUTO_P1: RootKind.ETA_FRACTIONAL,
    SolutionKind.RIEMANN_LIOUVILLE_P2: RootKind.XI_FRACTIONAL,
    SolutionKind.CLASSICAL: RootKind.ETA_CLASSICAL,
}


@dataclass(frozen=True)
class SpaceTimePoint:
    """A position x >= 0 at a time t > 0."""

    x: float
    t: float

    def __post_init__(self):
        if not (self.t > 0.0) or not math.isfinite(self.t):
            raise InvalidParameterError(f"time must be positive, got {self.t}")
        if not (self.x >= 0.0) or not math.isfinite(self.x):
            raise InvalidParameterError(f"position must be >= 0, got {self.x}")


@dataclass(frozen=True)
class SelfSimilarSolution:
    """One closed-form solution: its kind, order, and front coefficient."""

    kind: SolutionKind
    alpha: Alpha
    coefficient: FrontCoefficient

    def __post_init__(self):
        expected = _ROOT_FOR_KIND[self.kind]
        if self.coefficient.kind is not expected:
            raise InvalidParameterError(
                f"{self.kind.value} solution needs a {expected.value} coefficient, "
                f"got {self.coefficient.kind.value}"
            )
        if self.kind is SolutionKind.CLASSICAL and self.alpha.value != 1.0:
            raise InvalidParameterError("classical solution requires alpha = 1")
        if self.kind is not SolutionKind.CLASSICAL and not (
            self.coefficient.alpha.value == self.alpha.value
        ):
            raise InvalidParameterError(
                "solution order and coefficient order disagree"
            )

    # -- geometry ----------------------------------------------------------

    def front(self, t: float) -> float:
        """Free-boundary position 2 c t^(alpha/2); tends to 0 with t."""
        if not (t > 0.0):
            raise InvalidParameterError(f"time must be positive, got {t}")
        return 2.0 * self.coefficient.value * t ** (0.5 * self.alpha.value)

    def front_velocity(self, t: float) -> float:
        """d/dt of the front position."""
        if not (t > 0.0):
            raise InvalidParameterError(f"time must be positive, got {t}")
        a = self.alpha.value
        return self.coefficient.value * a * t ** (0.5 * a - 1.0)

    # -- field evaluation ---------------------------------------------------

    def _scale(self) -> float:
        """1 / (1 - W(-2c, -a/2, 1)), resp. 1/erf(c) for the classical kind."""
        c = self.coefficient.value
        if self.kind is SolutionKind.CLASSICAL:
            return 1.0 / float(erf(c))
        rho = -0.5 * self.alpha.value
        return 1.0 / (1.0 - wright(-2.0 * c, rho, 1.0, _FD_ACCURACY))

    def _temperature_raw(self, x, t, accuracy=None):
        """Temperature formula with no domain restriction (analytic extension)."""
        y = np.asarray(x, dtype=float) * t ** (-0.5 * self.alpha.value)
        if self.kind is SolutionKind.CLASSICAL:
            return 1.0 - self._scale() * erf(0.5 * y)
        rho = -0.5 * self.alpha.value
        w = wright(-y, rho, 1.0, accuracy or _FD_ACCURACY)
        return 1.0 - self._scale() * (1.0 - w)

    def _flux_raw(self, x, t, accuracy=None):
        """Spatial temperature gradient, analytic extension."""
        a = self.alpha.value
        y = np.asarray(x, dtype=float) * t ** (-0.5 * a)
        if self.kind is SolutionKind.CLASSICAL:
            return -self._scale() * np.exp(-0.25 * y**2) / math.sqrt(math.pi * t)
        rho = -0.5 * a
        m = wright(-y, rho, 1.0 + rho, accuracy or _FD_ACCURACY)
        return -self._scale() * t ** (-0.5 * a) * m

    def _check_domain(self, x, t) -> None:
        front = self.front(t)
        if np.any(np.asarray(x) > front * (1.0 + _DOMAIN_SLACK)):
            raise OutOfDomainError(
                f"x={x} lies beyond the front {front:.6g} at t={t}"
            )

    def temperature(self, x, t: float):
        """Temperature at 0 <= x <= front(t); 1 at x=0 and 0 on the front."""
        SpaceTimePoint(float(np.min(x)), t)
        self._check_domain(x, t)
        out = self._temperature_raw(x, t)
        return float(out) if np.ndim(x) == 0 else out

    def flux(self, x, t: float):
        """Temperature gradient d/dx at 0 <= x <= front(t); negative throughout."""
        SpaceTimePoint(float(np.min(x)), t)
        self._check_domain(x, t)
        out = self._flux_raw(x, t)
        return float(out) if np.ndim(x) == 0 else out


def _solved(kind: SolutionKind, alpha: Alpha, tol: float) -> SelfSimilarSolution:
    root = _ROOT_FOR_KIND[kind]
    problem = RootProblem(root, alpha if root.is_fractional else None, tol=tol)
    return SelfSimilarSolution(kind, alpha, solve(problem))


def caputo_solution(alpha: Alpha | float, tol: float = 1e-12) -> SelfSimilarSolution:
    """Solve the Caputo front equation and assemble the solution."""
    return _solved(SolutionKind.CAPUTO_P1, as_alpha(alpha), tol)


def riemann_liouville_solution(
    alpha: Alpha | float, tol: float = 1e-12
) -> SelfSimilarSolution:
    """Solve the Riemann-Liouville front equation and assemble the solution."""
    return _solved(SolutionKind.RIEMANN_LIOUVILLE_P2, as_alpha(alpha), tol)


def classical_solution(tol: float = 1e-12) -> SelfSimilarSolution:
    """The alpha = 1 melting solution."""
    return _solved(SolutionKind.CLASSICAL, Alpha(1.0), tol)


# -- residual checks --------------------------------------------------------


def _check_residual_point(sol: SelfSimilarSolution, x: float, t: float) -> None:
    if t < _MIN_RESIDUAL_TIME:
        raise InvalidParameterError(
            f"residual checks need t >= {_MIN_RESIDUAL_TIME} (uniform-grid "
            f"quadrature degrades in the initial layer), got t={t}"
        )
    if not (0.0 < x < sol.front(t)):
        raise OutOfDomainError(
            f"need an interior point 0 < x < {sol.front(t):.6g}, got x={x}"
        )


def _uxx_fd(sol: SelfSimilarSolution, x: float, t: float) -> float:
    h = _FD_STEP_X
    u = sol._temperature_raw(np.array([x - h, x, x + h]), t)
    return float((u[0] - 2.0 * u[1] + u[2]) / h**2)


def pde_residual_caputo(
    sol: SelfSimilarSolution, x: float, t: float, grid_n: int = 4096
) -> float:
    """|time-fractional derivative - u_xx| at an interior point.

    The Caputo derivative of the temperature history is computed with the L1
    quadrature oracle on grid_n uniform intervals of [0, t]; u_xx comes from
    a central difference.  For the classical solution the time derivative is
    a plain central difference and grid_n is unused.
    """
    _check_residual_point(sol, x, t)
    uxx = _uxx_fd(sol, x, t)

    if sol.kind is SolutionKind.CLASSICAL:
        dt = _FD_STEP_T
        u = [sol._temperature_raw(x, t - dt), sol._temperature_raw(x, t + dt)]
        ut = (u[1] - u[0]) / (2.0 * dt)
        return abs(float(ut) - uxx)

    if sol.kind is not SolutionKind.CAPUTO_P1:
        raise InvalidParameterError(
            "the Caputo-form PDE residual applies to the Caputo or classical kinds"
        )
    if grid_n < 2:
        raise InvalidParameterError(f"grid_n must be >= 2, got {grid_n}")
    tau = np.linspace(0.0, t, grid_n + 1)
    vals = np.full(grid_n + 1, 1.0 - sol._scale())  # limit value as tau -> 0+
    y = x * tau[1:] ** (-0.5 * sol.alpha.value)
    rho = -0.5 * sol.alpha.value
    near = y < _SIMILARITY_CUTOFF
    w = np.zeros_like(y)
    w[near] = wright(-y[near], rho, 1.0, _FD_ACCURACY)
    vals[1:] = 1.0 - sol._scale() * (1.0 - w)
    hist = frcalc.SampledFunction(t, vals)
    cap = frcalc.caputo_derivative(hist, sol.alpha, grid_n)
    return abs(cap - uxx)


def stefan_condition_residual_caputo(sol: SelfSimilarSolution, t: float) -> float:
    """Interface condition of the Caputo problem, via exact power rules.

    For the Caputo kind this is |cD^a s(t) + u_x(s(t), t)| with the fractional
    derivative of 2 c t^(a/2) taken in closed form; for the classical kind it
    is |s'(t) + u_x(s(t), t)|.  Vanishes to solver tolerance by construction
    of the front coefficient.
    """
    if not (t > 0.0):
        raise InvalidParameterError(f"time must be positive, got {t}")
    c = sol.coefficient.value
    a = sol.alpha.value
    if sol.kind is SolutionKind.CLASSICAL:
        ds = sol.front_velocity(t)
        return abs(ds + sol._flux_raw(sol.front(t), t))
    if sol.kind is not SolutionKind.CAPUTO_P1:
        raise InvalidParameterError(
            "the Caputo-form interface residual applies to the Caputo or "
            "classical kinds"
        )
    # cD^a (2 c t^(a/2)) = 2 c Gamma(1+a/2)/Gamma(1-a/2) t^(-a/2)
    frac_ds = 2.0 * c * (gamma(1.0 + 0.5 * a) / gamma(1.0 - 0.5 * a)) * t ** (-0.5 * a)
    return abs(frac_ds + sol._flux_raw(sol.front(t), t))


def _rl_derivative_of_flux_history(
    sol: SelfSimilarSolution, x: float, t: float, order: float, grid_n: int
) -> float:
    """RL derivative of the gradient history tau -> u_x(x, tau) at tau = t.

    The history is the analytic extension of the closed-form gradient; it
    decays to 0 as tau -> 0+, so the tau = 0 sample is exact.
    """
    tau = np.linspace(0.0, t, grid_n + 1)
    vals = np.zeros(grid_n + 1)
    vals[1:] = _flux_history(sol, x, tau[1:])
    hist = frcalc.SampledFunction(t, vals)
    return frcalc.rl_derivative(hist, order, grid_n)


def _flux_history(sol: SelfSimilarSolution, x: float, tau: np.ndarray) -> np.ndarray:
    a = sol.alpha.value
    y = x * tau ** (-0.5 * a)
    if sol.kind is SolutionKind.CLASSICAL:
        return -sol._scale() * np.exp(-0.25 * y**2) / np.sqrt(math.pi * tau)
    rho = -0.5 * a
    out = np.zeros_like(tau)
    near = y < _SIMILARITY_CUTOFF
    out[near] = (
        -sol._scale()
        * tau[near] ** (-0.5 * a)
        * wright(-y[near], rho, 1.0 + rho, _FD_ACCURACY)
    )
    return out


def stefan_condition_residual_rl(
    sol: SelfSimilarSolution,
    t: float,
    grid_n: int = 8192,
    x_offsets: tuple[float, ...] | None = None,
    order_alpha: float | None = None,
) -> float:
    """Interface condition of the Riemann-Liouville problem.

    Computes RL-D^(1-a) of the flux history at interior points x = s(t) - eps
    for a decreasing ladder of offsets, extrapolates the values to the
    boundary (Aitken, assuming a roughly geometric offset ladder), and
    returns |s'(t) + limit|.  Small for the Riemann-Liouville solution and
    bounded away from zero for the Caputo solution, which discriminates the
    two problems.

    order_alpha overrides the order used in RL-D^(1-order_alpha); this is how
    the classical solution is checked near alpha = 1.
    """
    if t < _MIN_RESIDUAL_TIME:
        raise InvalidParameterError(
            f"the interface-limit check needs t >= {_MIN_RESIDUAL_TIME}, got {t}"
        )
    a_ord = sol.alpha.value if order_alpha is None else float(order_alpha)
    if not (0.0 < a_ord < 1.0):
        raise InvalidParameterError(
            f"need an order in (0, 1) for the RL derivative, got alpha={a_ord}"
        )
    s_t = sol.front(t)
    if x_offsets is None:
        x_offsets = (0.2 * s_t, 0.1 * s_t, 0.05 * s_t)
    eps = np.asarray(x_offsets, dtype=float)
    if eps.ndim != 1 or eps.shape[0] < 3:
        raise InvalidParameterError("need at least three interior offsets")
    if not (np.all(np.diff(eps) < 0.0) and np.all(eps > 0.0) and np.all(eps < s_t)):
        raise InvalidParameterError(
            "offsets must be a decreasing sequence inside (0, front)"
        )

    r = np.array(
        [
            _rl_derivative_of_flux_history(sol, s_t - e, t, 1.0 - a_ord, grid_n)
            for e in eps
        ]
    )
    d1, d2 = r[-2] - r[-3], r[-1] - r[-2]
    if abs(d2) <= 1e-12 + 1e-6 * abs(r[-1]):
        limit = r[-1]  # already converged to quadrature noise
    else:
        if abs(d2) >= abs(d1):
            raise ExtrapolationUnstableError(
                f"offset sequence diverges: increments {d1:g} -> {d2:g}"
            )
        limit = r[-1] - d2 * d2 / (d2 - d1)
    return abs(sol.front_velocity(t) + limit)
