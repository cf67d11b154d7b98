"""Product-integration quadrature for fractional operators on uniform grids.

These routines are the independent numerical oracle of the package: they
verify closed-form identities and PDE residuals without trusting the Wright
series those closed forms are built from.

All three operators share one primitive: the kernel (t - tau)^(beta-1) is
integrated exactly on each subinterval against a piecewise-linear
interpolant of the sampled function.  That makes the Riemann-Liouville
integral O(h^2) for smooth inputs, the Caputo derivative the classical L1
scheme, and the Riemann-Liouville derivative a one-sided second-order
difference of the (1-order)-integral.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import gamma as _gamma

from .errors import InvalidParameterError, NeedsMoreGridError
from .specfun import Alpha, as_alpha

__all__ = [
    "SampledFunction",
    "rl_integral",
    "caputo_derivative",
    "rl_derivative",
]


@dataclass(frozen=True)
class SampledFunction:
    """Uniform-grid samples of a function of time on [0, t_end].

    values[j] holds f(j * t_end / n) for j = 0..n, n = len(values) - 1 >= 2.
    """

    t_end: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", vals)
        if not (self.t_end > 0.0) or not np.isfinite(self.t_end):
            raise InvalidParameterError(f"t_end must be positive, got {self.t_end}")
        if vals.ndim != 1 or vals.shape[0] < 3:
            raise InvalidParameterError(
                "need at least n=2 intervals, i.e. 3 samples, got "
                f"shape {vals.shape}"
            )
        if not np.all(np.isfinite(vals)):
            raise InvalidParameterError("samples must all be finite")

    @property
    def n(self) -> int:
        """Number of uniform intervals."""
        return self.values.shape[0] - 1

    @property
    def h(self) -> float:
        """Grid spacing."""
        return self.t_end / self.n

    @classmethod
    def from_callable(cls, f, t_end: float, n: int) -> "SampledFunction":
        t = np.linspace(0.0, t_end, n + 1)
        return cls(t_end, np.asarray(f(t), dtype=float))


def _check_index(f: SampledFunction, at: int) -> int:
    at = int(at)
    if not (1 <= at <= f.n):
        raise InvalidParameterError(f"grid index must be in [1, {f.n}], got {at}")
    return at


def rl_integral(
    f: SampledFunction,
    beta: float,
    at: int,
    singular_power: float = 0.0,
) -> float:
    """Riemann-Liouville integral (I^beta f)(t_at), beta in (0, 1].

    With singular_power = p != 0 the input is taken as f(tau) = tau^p * g(tau)
    with g smooth; the first subinterval then integrates the tau^p moment
    exactly against a linear extrapolation of the remaining smooth factor
    from nodes 1 and 2, so f.values[0] is never used (samples such as
    tau^(p<0) blow up at tau=0 and are conventionally stored as 0).
    """
    if not (0.0 < beta <= 1.0):
        raise InvalidParameterError(f"integral order must be in (0, 1], got {beta}")
    at = _check_index(f, at)
    if singular_power != 0.0:
        if singular_power <= -1.0:
            raise InvalidParameterError(
                f"singular_power must exceed -1, got {singular_power}"
            )
        if at < 2:
            raise NeedsMoreGridError(
                "singular first subinterval needs the evaluation index >= 2"
            )

    h = f.h
    t = at * h
    vals = f.values
    j0 = 0 if singular_power == 0.0 else 1

    # exact kernel moments against the linear interpolant, cells j0..at-1
    j = np.arange(j0, at)
    b = t - j * h          # kernel argument at the left node
    a = b - h              # and at the right node
    slope = (vals[j + 1] - vals[j]) / h
    pow_b = b**beta
    pow_a = a**beta
    cell = (vals[j] + slope * b) * (pow_b - pow_a) / beta
    cell -= slope * (b * pow_b - a * pow_a) / (beta + 1.0)
    total = float(np.sum(cell))

    if singular_power != 0.0:
        p = singular_power
        # smooth part s(tau) = g(tau) * (t - tau)^(beta-1), extrapolated
        # linearly onto [0, h] from its values at nodes 1 and 2
        g1 = vals[1] / h**p
        g2 = vals[2] / (2.0 * h) ** p
        s1 = g1 * (t - h) ** (beta - 1.0)
        if at > 2:
            s2 = g2 * (t - 2.0 * h) ** (beta - 1.0)
        else:
            # node 2 sits on the kernel singularity; constant fallback
            s2 = s1
        a0 = 2.0 * s1 - s2
        b0 = (s2 - s1) / h
        total += a0 * h ** (p + 1.0) / (p + 1.0) + b0 * h ** (p + 2.0) / (p + 2.0)

    return total / float(_gamma(beta))


def caputo_derivative(f: SampledFunction, alpha: Alpha | float, at: int) -> float:
    """Caputo derivative of order alpha in (0, 1) at t_at, L1 scheme.

    Piecewise-linear f gives piecewise-constant slopes; the kernel
    (t - tau)^(-alpha) is integrated exactly against each one.  Consistent
    with I^(1-alpha) applied to f'.
    """
    a = as_alpha(alpha)
    if a.value >= 1.0:
        raise InvalidParameterError("Caputo order must be strictly below 1")
    at = _check_index(f, at)

    h = f.h
    al = a.value
    vals = f.values
    j = np.arange(0, at)
    slope = (vals[j + 1] - vals[j]) / h
    w = ((at - j) * h) ** (1.0 - al) - ((at - j - 1) * h) ** (1.0 - al)
    return float(np.sum(slope * w) / _gamma(2.0 - al))


def rl_derivative(f: SampledFunction, order: float, at: int) -> float:
    """Riemann-Liouville derivative of order in (0, 1) at t_at.

    Computed as d/dt of the (1-order)-integral: the integral is evaluated on
    the grid and differentiated with the one-sided second-order backward
    stencil, which needs at >= 2.
    """
    if not (0.0 < order < 1.0):
        raise InvalidParameterError(f"derivative order must be in (0, 1), got {order}")
    at = _check_index(f, at)
    if at < 2:
        raise NeedsMoreGridError("backward stencil needs index >= 2")

    g = [rl_integral(f, 1.0 - order, j) for j in (at - 2, at - 1, at)]
    return (3.0 * g[2] - 4.0 * g[1] + g[0]) / (2.0 * f.h)
