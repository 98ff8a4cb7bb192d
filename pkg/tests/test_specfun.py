import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uavsop.specfun import (DomainError, MeijerNonConvergence, MeijerParams, MeijerUnsupported,
                            PoleError, erf, ln_gamma, ln_gamma_complex, lower_inc_gamma,
                            lower_inc_gamma_scaled, meijer_g)

mp.mp.dps = 30


@pytest.mark.parametrize("x", [-3.0, -0.5, 0.0, 1e-8, 0.3, 1.0, 2.5, 6.0])
def test_erf_matches_mpmath(x):
    assert erf(x) == pytest.approx(float(mp.erf(x)), rel=1e-14, abs=1e-300)


def test_erf_vectorised_and_odd():
    x = np.linspace(-4, 4, 17)
    np.testing.assert_allclose(erf(x), -erf(-x), atol=0)


def test_ln_gamma_real():
    assert ln_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), rel=1e-14)
    assert ln_gamma(10) == pytest.approx(math.log(362880), rel=1e-14)


@pytest.mark.parametrize("z", [0.5 + 2j, 3 - 1j, -2.5 + 0.1j, 10 + 40j])
def test_ln_gamma_complex(z):
    ref = complex(mp.loggamma(z))
    assert abs(ln_gamma_complex(z) - ref) < 1e-12 * max(1, abs(ref))


@pytest.mark.parametrize("z", [0, -1, -7])
def test_ln_gamma_complex_poles(z):
    with pytest.raises(PoleError):
        ln_gamma_complex(z)


@pytest.mark.parametrize("a", [0.5, 1.0, 1.5, 2.0, 2.5, 3.7, 12.0])
@pytest.mark.parametrize("x", [0.0, 1e-6, 0.1, 1.0, 2.0, 5.0, 10.0, 40.0])
def test_lower_inc_gamma_matches_mpmath(a, x):
    ref = float(mp.gammainc(a, 0, x))
    assert lower_inc_gamma(a, x) == pytest.approx(ref, rel=1e-12, abs=1e-300)


def test_lower_inc_gamma_scaled_small_x_limit():
    # U(a, x) / x^a -> 1/a
    assert lower_inc_gamma_scaled(1.5, 1e-12) == pytest.approx(1 / 1.5, rel=1e-10)


def test_lower_inc_gamma_domain():
    with pytest.raises(DomainError):
        lower_inc_gamma(0.0, 1.0)
    with pytest.raises(DomainError):
        lower_inc_gamma(1.0, -1.0)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.2, 8.0), st.floats(0.0, 30.0), st.floats(0.0, 30.0))
def test_lower_inc_gamma_monotone_and_bounded(a, x1, x2):
    lo, hi = sorted((x1, x2))
    g_lo, g_hi = lower_inc_gamma(a, lo), lower_inc_gamma(a, hi)
    assert g_lo <= g_hi * (1 + 1e-13)
    assert g_hi <= math.gamma(a) * (1 + 1e-13)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.2, 6.0), st.floats(0.01, 20.0))
def test_lower_inc_gamma_recurrence(a, x):
    # U(a+1, x) = a U(a, x) - x^a e^{-x}
    lhs = lower_inc_gamma(a + 1, x)
    rhs = a * lower_inc_gamma(a, x) - x ** a * math.exp(-x)
    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-13)


def test_meijer_params_validation():
    p = MeijerParams(1, 1, (1,), (0.5, 0))
    assert (p.p, p.q) == (1, 2)
    assert p.delta > 0
    with pytest.raises((MeijerUnsupported, ValueError)):
        meijer_g(MeijerParams(1, 0, (), (0, 0.5, 1)), 1.0)  # delta <= 0


def test_meijer_rejects_nonpositive_argument():
    with pytest.raises(DomainError):
        meijer_g(MeijerParams(1, 0, (), (0,)), -1.0)


@pytest.mark.parametrize("x", [0.05, 0.5, 1.0, 3.0, 8.0])
def test_meijer_exp(x):
    assert meijer_g(MeijerParams(1, 0, (), (0,)), x) == pytest.approx(math.exp(-x), rel=1e-8)


@pytest.mark.parametrize("a", [0.5, 1.0, 1.5, 2.0, 2.5])
@pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 2.0, 5.0, 10.0])
def test_meijer_lower_gamma(a, x):
    g = meijer_g(MeijerParams(1, 1, (1,), (a, 0)), x)
    assert g == pytest.approx(float(mp.gammainc(a, 0, x)), rel=1e-8)


@pytest.mark.parametrize("z", [0.1, 0.5, 1.0, 2.0, 3.0])
def test_meijer_erf(z):
    # erf(z) = pi^{-1/2} G^{1,1}_{1,2}[z^2 | 1; 1/2, 0]
    g = meijer_g(MeijerParams(1, 1, (1,), (0.5, 0)), z * z) / math.sqrt(math.pi)
    assert g == pytest.approx(float(mp.erf(z)), rel=1e-8)


@pytest.mark.parametrize("x", [0.07, 0.6, 2.2, 9.0])
def test_meijer_4x4_matches_mpmath(x):
    a, b = (1, 1.5, 3.5, 2.5), (2.5, 1.5, 2.5, 0)
    ref = float(mp.meijerg([[1, 1.5], [3.5, 2.5]], [[2.5, 1.5, 2.5], [0]], x))
    assert meijer_g(MeijerParams(3, 2, a, b), x) == pytest.approx(ref, rel=1e-8)


def test_meijer_exception_types_exist():
    assert issubclass(MeijerNonConvergence, ArithmeticError)
