import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, special

from lntx import specfun
from lntx.errors import DomainError


def test_gamma_small_integers_exact():
    assert specfun.gamma(1.0) == 1.0
    assert specfun.gamma(4.0) == 6.0


def test_gamma_half():
    assert specfun.gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)


@pytest.mark.parametrize("z", [0.0, -1.0, -2.0, -7.0])
def test_gamma_poles_rejected(z):
    with pytest.raises(DomainError):
        specfun.gamma(z)


def test_gamma_against_mpmath():
    zs = np.concatenate([np.linspace(0.01, 50, 400), [-0.5, -1.5, -2.25]])
    got = specfun.gamma(zs)
    want = np.array([float(mpmath.gamma(z)) for z in zs])
    assert np.max(np.abs(got / want - 1)) <= 1e-12


def test_loggamma_large():
    for z in (60.0, 120.5, 400.0):
        assert specfun.loggamma(z) == pytest.approx(float(mpmath.loggamma(z)), rel=1e-14)


def test_rgamma_zero_at_poles():
    assert specfun.rgamma(-3.0) == 0.0
    assert specfun.rgamma(5.0) == pytest.approx(1 / 24, rel=1e-15)


def test_nan_rejected():
    for fn in (specfun.gamma, specfun.erf, specfun.erfc, specfun.erfcx):
        with pytest.raises(DomainError):
            fn(float("nan"))
    with pytest.raises(DomainError):
        specfun.bessel_j(0, float("nan"))


@given(st.floats(0.1, 30))
@settings(max_examples=200, deadline=None)
def test_gamma_recurrence(z):
    assert specfun.gamma(z + 1) == pytest.approx(z * specfun.gamma(z), rel=1e-11)


@given(st.floats(0.1, 15))
@settings(max_examples=100, deadline=None)
def test_gamma_duplication(z):
    lhs = specfun.gamma(z) * specfun.gamma(z + 0.5)
    rhs = 2 ** (1 - 2 * z) * math.sqrt(math.pi) * specfun.gamma(2 * z)
    assert lhs == pytest.approx(rhs, rel=1e-10)


@given(st.floats(0.01, 0.99))
@settings(max_examples=100, deadline=None)
def test_gamma_reflection(z):
    lhs = specfun.gamma(z) * specfun.gamma(1 - z)
    assert lhs == pytest.approx(math.pi / math.sin(math.pi * z), rel=1e-10)


def test_bessel_trivial_values():
    assert specfun.bessel_j(0, 0.0) == 1.0
    assert specfun.bessel_j(1, 0.0) == 0.0


def test_bessel_j0_first_zero_by_bisection():
    lo, hi = 2.0, 3.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if specfun.bessel_j(0, lo) * specfun.bessel_j(0, mid) <= 0:
            hi = mid
        else:
            lo = mid
    assert abs(0.5 * (lo + hi) - 2.404825557695773) < 1e-10
    assert abs(specfun.bessel_j(0, 2.404825557695773)) < 1e-10


@pytest.mark.parametrize("nu", [0, 0.5, 1, 1.5, 2, 3, 4.25, 8])
def test_bessel_against_scipy(nu):
    x = np.linspace(0, 60, 601)
    assert np.max(np.abs(specfun.bessel_j(nu, x) - special.jv(nu, x))) <= 5e-14


def test_bessel_negative_integer_order():
    x = np.linspace(0.1, 20, 50)
    assert np.allclose(specfun.bessel_j_int(-3, x), -specfun.bessel_j(3, x), rtol=0, atol=0)


@pytest.mark.parametrize("nu", [-0.5, -1.5, -2.7])
def test_bessel_negative_fractional_order(nu):
    x = np.linspace(0.2, 40, 200)
    got = specfun.bessel_j_real(nu, x)
    assert np.max(np.abs(got - special.jv(nu, x)) / np.maximum(1, np.abs(special.jv(nu, x)))) <= 1e-12


def test_bessel_domain():
    with pytest.raises(DomainError):
        specfun.bessel_j(-1, 1.0)
    with pytest.raises(DomainError):
        specfun.bessel_j(0, -1.0)


@given(st.integers(1, 6), st.floats(0.01, 20))
@settings(max_examples=200, deadline=None)
def test_bessel_recurrence(nu, x):
    lhs = specfun.bessel_j(nu - 1, x) + specfun.bessel_j(nu + 1, x)
    assert abs(lhs - 2 * nu / x * specfun.bessel_j(nu, x)) <= 1e-9


def test_erf_trivial_values():
    assert specfun.erf(0.0) == 0.0
    assert specfun.erfc(0.0) == 1.0
    assert abs(specfun.erf(10.0) - 1) <= 1e-14


def test_erf_erfc_against_scipy():
    x = np.linspace(-6, 26, 3201)
    assert np.max(np.abs(specfun.erf(x) - special.erf(x))) <= 2e-15
    assert np.max(np.abs(specfun.erfc(x) / special.erfc(x) - 1)) <= 1e-14
    xx = np.linspace(-3, 1e4, 5000)
    assert np.max(np.abs(specfun.erfcx(xx) / special.erfcx(xx) - 1)) <= 1e-14


@given(st.floats(-8, 8))
@settings(max_examples=200, deadline=None)
def test_erf_complement_and_odd(x):
    assert abs(specfun.erf(x) + specfun.erfc(x) - 1) <= 1e-14
    assert specfun.erf(-x) == -specfun.erf(x)


@given(st.floats(0.0, 5.0))
@settings(max_examples=40, deadline=None)
def test_erf_matches_quadrature(x):
    val, _ = integrate.quad(lambda u: math.exp(-u * u), 0, x, epsabs=1e-13, epsrel=1e-13)
    assert abs(specfun.erf(x) - 2 / math.sqrt(math.pi) * val) <= 1e-10


@pytest.mark.parametrize("order", [1, 2, 3, 4, 6])
def test_erfcx_derivatives_against_mpmath(order):
    for z in (-1.0, 0.0, 0.7, 1.9, 2.1, 5.0, 40.0, 3000.0):
        f = lambda t: mpmath.exp(t * t) * mpmath.erfc(t)  # noqa: E731
        with mpmath.workdps(40):
            want = float(mpmath.diff(f, z, order))
        got = specfun.erfcx_deriv(order, z)
        assert got == pytest.approx(want, rel=1e-12, abs=1e-300)
