"""Wright/Mainardi series against independent oracles and closed forms."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import erf as sp_erf

from fracstefan.errors import InvalidParameterError, NonConvergentError, PoleError
from fracstefan.specfun import (
    Alpha,
    SeriesAccuracy,
    WrightEval,
    double_factorial,
    erf,
    erfc,
    gamma,
    log_gamma,
    mainardi,
    rgamma,
    wright,
)

SQRT_PI = math.sqrt(math.pi)

# Oracle: the same series summed by mpmath at 40 digits, term cap 10000,
# stopping at 1e-25; frozen here so the suite does not depend on mpmath.
W_M1_M0375_1 = 0.4494143659692778


def mp_wright_oracle(z, rho, beta, stop=1e-25, cap=10000):
    import mpmath as mp

    with mp.workdps(40):
        s = mp.mpf(0)
        for k in range(cap):
            term = mp.mpf(z) ** k / mp.factorial(k) * mp.rgamma(mp.mpf(rho) * k + beta)
            s += term
            if k > 4 and abs(term) < stop:
                break
        return float(s)


def test_frozen_oracle_value_recomputes():
    assert mp_wright_oracle(-1.0, -0.375, 1.0) == pytest.approx(
        W_M1_M0375_1, abs=1e-16
    )


def test_wright_at_zero_is_reciprocal_gamma():
    assert wright(0.0, -0.25, 1.0) == 1.0
    assert wright(0.0, -0.3, 0.7) == pytest.approx(rgamma(0.7), abs=1e-15)


def test_wright_matches_erfc_closed_form():
    # W(-2x, -1/2, 1) = erfc(x); the right side comes from scipy, not the series
    assert wright(-2.0, -0.5, 1.0) == pytest.approx(erfc(1.0), abs=1e-10)
    x = np.linspace(0.0, 3.0, 61)
    gap = np.abs(wright(-2.0 * x, -0.5, 1.0) - erfc(x))
    assert gap.max() <= 1e-10


def test_wright_matches_high_precision_oracle():
    tight = SeriesAccuracy(tol=1e-13)
    assert wright(-1.0, -0.375, 1.0, tight) == pytest.approx(W_M1_M0375_1, abs=1e-12)


def test_mainardi_values():
    assert mainardi(0.5, 0.0) == pytest.approx(1.0 / SQRT_PI, abs=1e-14)
    assert mainardi(0.5, 2.0) == pytest.approx(math.exp(-1.0) / SQRT_PI, abs=1e-12)
    # definitional identity
    assert mainardi(0.375, 1.6) == wright(-1.6, -0.375, 0.625)


def test_mainardi_matches_gaussian_closed_form():
    x = np.linspace(0.0, 3.0, 61)
    gap = np.abs(mainardi(0.5, 2.0 * x) - np.exp(-(x**2)) / SQRT_PI)
    assert gap.max() <= 1e-10


def test_mainardi_rejects_rho_outside_unit_interval():
    with pytest.raises(InvalidParameterError):
        mainardi(1.0, 0.5)
    with pytest.raises(InvalidParameterError):
        mainardi(0.0, 0.5)


@pytest.mark.parametrize("rho", [-0.45, -0.25, -0.1])
@pytest.mark.parametrize("beta", [0.5, 1.0, 1.5])
def test_derivative_rule_against_finite_differences(rho, beta):
    # d/dz W(z, rho, beta) = W(z, rho, rho + beta)
    h = 1e-5
    z = np.linspace(-3.0, 0.0, 13)
    fd = (wright(z + h, rho, beta) - wright(z - h, rho, beta)) / (2.0 * h)
    assert np.abs(fd - wright(z, rho, rho + beta)).max() <= 1e-6


@pytest.mark.parametrize("rho", [0.2, 0.5, 0.8])
def test_positive_and_strictly_decreasing(rho):
    # x -> W(-x, -rho, beta) on the paper's parameter range beta >= rho.
    # (For beta < rho the function initially increases: the slope at 0+ is
    # -1/Gamma(beta - rho), which is positive when beta - rho is in (-1, 0).)
    x = np.linspace(0.01, 5.0, 120)
    for beta in (rho, 1.0, 1.5):
        vals = wright(-x, -rho, beta)
        assert np.all(vals > 0.0)
        assert np.all(np.diff(vals) < 0.0)


def test_gamma_family_values():
    assert gamma(0.5) == pytest.approx(SQRT_PI, rel=1e-15)
    # Gamma(n + 1/2) = (2n-1)!! / 2^n * sqrt(pi) at n = 2
    assert gamma(2.5) == pytest.approx(0.75 * SQRT_PI, rel=1e-15)
    assert rgamma(-3.0) == 0.0
    assert log_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-14)


def test_gamma_pole_and_log_gamma_domain():
    with pytest.raises(PoleError):
        gamma(0.0)
    with pytest.raises(PoleError):
        gamma(-2.0)
    with pytest.raises(InvalidParameterError):
        log_gamma(-1.5)


@pytest.mark.parametrize("n", range(1, 11))
def test_double_factorial_identities(n):
    dfact = double_factorial(2 * n - 1)
    # (2n)! = 2^n n! (2n-1)!!, exact in integers
    assert math.factorial(2 * n) == 2**n * math.factorial(n) * dfact
    # Gamma(n + 1/2) = (2n-1)!!/2^n sqrt(pi)
    expected = dfact / 2**n * SQRT_PI
    assert gamma(n + 0.5) == pytest.approx(expected, rel=1e-12)


def test_double_factorial_small_cases():
    assert double_factorial(1) == 1
    assert double_factorial(5) == 15
    assert double_factorial(9) == 945


def test_double_factorial_rejects_even_and_nonpositive():
    for bad in (0, -3, 4):
        with pytest.raises(InvalidParameterError):
            double_factorial(bad)
    with pytest.raises(InvalidParameterError):
        double_factorial(2.0)


def test_erf_basics():
    assert erf(0.0) == 0.0
    assert erfc(0.0) == 1.0
    assert float(erf(1.0)) == pytest.approx(float(sp_erf(1.0)), abs=0)


def test_classical_root_identity_near_paper_value():
    # at the reported root location both sides of x erf(x) = exp(-x^2)/sqrt(pi)
    # agree to about four decimals
    x = 0.6201
    lhs = x * float(erf(x))
    rhs = math.exp(-(x**2)) / SQRT_PI
    assert lhs == pytest.approx(0.38414468, abs=1e-7)
    assert abs(lhs - rhs) <= 1e-4


def test_invalid_rho_raises():
    with pytest.raises(InvalidParameterError):
        wright(-1.0, -1.0, 1.0)
    with pytest.raises(InvalidParameterError):
        WrightEval(-1.0, -1.5, 1.0)


def test_accuracy_invariants():
    with pytest.raises(InvalidParameterError):
        SeriesAccuracy(tol=0.0)
    with pytest.raises(InvalidParameterError):
        SeriesAccuracy(max_terms=0)


def test_alpha_invariants():
    with pytest.raises(InvalidParameterError):
        Alpha(0.0)
    with pytest.raises(InvalidParameterError):
        Alpha(1.2)
    assert Alpha(1.0).value == 1.0


def test_non_convergence_reports_terms():
    with pytest.raises(NonConvergentError) as err:
        wright(-6.0, -0.4, 1.0, SeriesAccuracy(tol=1e-12, max_terms=10))
    assert err.value.terms == 10


def test_wright_eval_reports_tail_bound():
    res = WrightEval(-2.0, -0.5, 1.0).evaluate()
    assert res.value == pytest.approx(erfc(1.0), abs=1e-10)
    assert 0.0 <= res.tail_bound <= 1e-12 / 2
    assert res.terms > 5


@settings(max_examples=60, deadline=None)
@given(
    z=st.floats(min_value=-8.0, max_value=0.0),
    rho=st.floats(min_value=-0.49, max_value=-0.05),
    beta=st.floats(min_value=0.2, max_value=1.6),
)
def test_summation_is_deterministic(z, rho, beta):
    assert wright(z, rho, beta) == wright(z, rho, beta)


def test_array_and_scalar_shapes():
    x = np.linspace(-2.0, 0.0, 7)
    out = wright(x, -0.3, 1.0)
    assert out.shape == x.shape
    assert isinstance(wright(-1.0, -0.3, 1.0), float)
