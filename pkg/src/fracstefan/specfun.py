"""Wright-function family: series evaluation and Gamma/error-function helpers.

The Wright function

    W(z; rho; beta) = sum_{k>=0} z^k / (k! Gamma(rho*k + beta)),   rho > -1,

is entire in z, so the power series is summed directly.  Terms are formed in
log space, ``sign * exp(k*log|z| - lgamma(k+1) - log|Gamma(rho*k+beta)|)``,
which avoids overflow of the individual factors and handles negative Gamma
arguments; terms whose Gamma argument lands on a nonpositive integer are
exactly zero (reciprocal Gamma vanishes at the poles).  Accumulation is
compensated (Kahan) so roundoff stays near eps * sum(|terms|).

The Mainardi function is the special case M_rho(x) = W(-x; -rho; 1-rho).

erf/erfc and the Gamma family are thin wrappers over scipy.special; they are
deliberately independent of the series above so they can serve as
cross-check oracles for it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special as sp

from .errors import InvalidParameterError, NonConvergentError, PoleError

__all__ = [
    "Alpha",
    "SeriesAccuracy",
    "SeriesValue",
    "WrightEval",
    "wright",
    "mainardi",
    "erf",
    "erfc",
    "gamma",
    "log_gamma",
    "rgamma",
    "double_factorial",
    "DEFAULT_ACCURACY",
]

# Geometric tail estimates are only trusted once the observed decay ratio is
# below 1/sqrt(2); beyond the asymptotic regime the true ratio only shrinks.
_RATIO_CAP = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class Alpha:
    """Fractional order; 0 < value <= 1 (1 only for classical-limit use)."""

    value: float

    def __post_init__(self):
        if not (0.0 < self.value <= 1.0) or not math.isfinite(self.value):
            raise InvalidParameterError(
                f"fractional order must lie in (0, 1], got {self.value}"
            )


def as_alpha(a: "Alpha | float") -> Alpha:
    """Coerce a float to a validated Alpha."""
    return a if isinstance(a, Alpha) else Alpha(float(a))


@dataclass(frozen=True)
class SeriesAccuracy:
    """Requested absolute truncation error and a cap on summed terms."""

    tol: float = 1e-12
    max_terms: int = 500

    def __post_init__(self):
        if not (self.tol > 0.0) or not math.isfinite(self.tol):
            raise InvalidParameterError(f"tol must be positive, got {self.tol}")
        if self.max_terms < 1:
            raise InvalidParameterError(
                f"max_terms must be >= 1, got {self.max_terms}"
            )


DEFAULT_ACCURACY = SeriesAccuracy()


@dataclass(frozen=True)
class SeriesValue:
    """Outcome of one series summation."""

    value: float
    tail_bound: float
    terms: int


@dataclass(frozen=True)
class WrightEval:
    """Arguments plus accuracy for a single Wright-function evaluation."""

    z: float
    rho: float
    beta: float
    accuracy: SeriesAccuracy = field(default_factory=SeriesAccuracy)

    def __post_init__(self):
        if not (self.rho > -1.0):
            raise InvalidParameterError(
                f"series requires rho > -1, got rho={self.rho}"
            )

    def evaluate(self) -> SeriesValue:
        value, bound, terms = _wright_series(
            np.asarray([self.z], dtype=float),
            self.rho,
            self.beta,
            self.accuracy.tol,
            self.accuracy.max_terms,
        )
        return SeriesValue(float(value[0]), float(bound[0]), terms)


def _wright_series(z, rho, beta, tol, max_terms):
    """Sum the Wright series for an array of arguments z (shared rho, beta).

    Returns (values, tail_bounds, terms_used).  Stops once every element's
    recent terms are decreasing, below tol/2, and carry a geometric tail
    estimate below tol/2.
    """
    n = z.shape[0]
    half_tol = 0.5 * tol

    with np.errstate(divide="ignore"):
        log_abs_z = np.log(np.abs(z))
    sign_z = np.where(z < 0.0, -1.0, 1.0)

    total = np.full(n, sp.rgamma(beta))  # k = 0 term, z^0 = 1 for every z
    comp = np.zeros(n)  # Kahan compensation
    # magnitudes of the last four terms, newest last
    hist = [np.zeros(n), np.zeros(n), np.zeros(n), np.abs(total)]
    tail = np.full(n, np.inf)
    done = np.zeros(n, dtype=bool)

    terms = 1
    for k in range(1, max_terms):
        w = rho * k + beta
        lgw = sp.gammaln(w)
        if np.isinf(lgw):
            # reciprocal Gamma vanishes at the pole: the term is exactly 0
            term = np.zeros(n)
        else:
            mag = np.exp(k * log_abs_z - sp.gammaln(k + 1.0) - lgw)
            term = sp.gammasgn(w) * sign_z**k * mag

        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        terms = k + 1

        hist = hist[1:] + [np.abs(term)]
        if k < 4:
            continue
        recent = np.maximum(hist[2], hist[3])
        older = np.maximum(hist[0], hist[1])
        with np.errstate(invalid="ignore", divide="ignore"):
            ratio = np.where(older > 0.0, recent / older, 0.0)
        ok = ratio < _RATIO_CAP
        est = np.where(ok, 2.0 * recent * ratio / (1.0 - np.where(ok, ratio, 0.0)), np.inf)
        done = (recent < older + (older == 0.0)) & (recent < half_tol) & (est <= half_tol)
        tail = est
        if done.all():
            break

    if not done.all():
        raise NonConvergentError(
            f"Wright series failed to meet tol={tol} within {max_terms} terms "
            f"(rho={rho}, beta={beta}, max |z|={np.max(np.abs(z)):g})",
            terms=terms,
        )
    return total, tail, terms


def wright(z, rho: float, beta: float, accuracy: SeriesAccuracy | None = None):
    """W(z; rho; beta) for scalar or array z.

    Raises InvalidParameterError for rho <= -1 and NonConvergentError if the
    accuracy budget is exhausted before the tail bound is met.
    """
    if not (rho > -1.0):
        raise InvalidParameterError(f"series requires rho > -1, got rho={rho}")
    acc = accuracy if accuracy is not None else DEFAULT_ACCURACY
    arr = np.asarray(z, dtype=float)
    scalar = arr.ndim == 0
    values, _, _ = _wright_series(arr.reshape(-1), rho, beta, acc.tol, acc.max_terms)
    if scalar:
        return float(values[0])
    return values.reshape(arr.shape)


def mainardi(rho: float, x, accuracy: SeriesAccuracy | None = None):
    """Mainardi function M_rho(x) = W(-x; -rho; 1-rho), 0 < rho < 1."""
    if not (0.0 < rho < 1.0):
        raise InvalidParameterError(f"Mainardi requires 0 < rho < 1, got {rho}")
    return wright(-np.asarray(x, dtype=float) if not np.isscalar(x) else -x,
                  -rho, 1.0 - rho, accuracy)


def erf(x):
    """Error function, independent of the Wright series (scipy kernel)."""
    return sp.erf(x)


def erfc(x):
    """Complementary error function, cancellation-safe for large x."""
    return sp.erfc(x)


def gamma(x):
    """Gamma function; raises PoleError at nonpositive integers."""
    arr = np.asarray(x, dtype=float)
    poles = (arr <= 0.0) & (arr == np.floor(arr))
    if np.any(poles):
        raise PoleError(f"Gamma pole at nonpositive integer argument {x}")
    out = sp.gamma(arr)
    return float(out) if arr.ndim == 0 else out


def log_gamma(x):
    """log Gamma(x) for x > 0 (used to keep series terms out of overflow)."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0.0):
        raise InvalidParameterError(f"log_gamma requires x > 0, got {x}")
    out = sp.gammaln(arr)
    return float(out) if arr.ndim == 0 else out


def rgamma(x):
    """Reciprocal Gamma, entire with zeros at the poles of Gamma."""
    out = sp.rgamma(np.asarray(x, dtype=float))
    return float(out) if np.asarray(x).ndim == 0 else out


def double_factorial(n: int) -> int:
    """(2m-1)!! style product n*(n-2)*...*3*1 for odd n >= 1, exact."""
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise InvalidParameterError(f"double_factorial needs an integer, got {n!r}")
    if n < 1 or n % 2 == 0:
        raise InvalidParameterError(f"double_factorial needs odd n >= 1, got {n}")
    return math.prod(range(1, n + 1, 2))
