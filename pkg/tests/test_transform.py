import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from lntx import table, transform
from lntx.errors import ValidityError
from lntx.functions import BlackBox, Const, CosXn, ErfArg, ExpNegAXn, GaussXn2, Power, SinXn
from lntx.transform import Combination, Damped, Order, forward_numeric, forward_via_laplace, shift_rule


def direct_quad(fx, n, y):
    """Independent oracle: integrate the defining integral in x with mpmath."""
    with mpmath.workdps(30):
        val = mpmath.quad(lambda x: x ** (n - 1) * mpmath.exp(-(x * y) ** n) * fx(x), [0, 1, 5, mpmath.inf])
    return float(val)


def test_order_accepts_powers_of_two():
    assert Order(8).k == 3
    assert Order(1).k == 0
    for bad in (0, 3, 6, -2):
        with pytest.raises(ValidityError, match="n = 2"):
            Order(bad)


def test_const_example():
    assert forward_numeric(Const(), 2, 1.0) == pytest.approx(0.5, rel=1e-12)


def test_exp_example():
    assert forward_numeric(ExpNegAXn(1.0), 2, 1.0) == pytest.approx(0.25, rel=1e-12)


def test_gauss_example():
    want = math.sqrt(math.pi) / 4 * math.exp(0.25) * special.erfc(0.5)
    assert forward_numeric(GaussXn2(1.0), 2, 1.0) == pytest.approx(want, rel=1e-10)
    assert direct_quad(lambda x: mpmath.exp(-x**4), 2, 1.0) == pytest.approx(want, rel=1e-10)


def test_laplace_path_examples():
    assert forward_via_laplace(Const(), 4, 1.5) == pytest.approx(1 / (4 * 1.5**4), rel=1e-12)
    assert forward_via_laplace(CosXn(1.0), 2, 1.0) == pytest.approx(0.25, rel=1e-12)
    assert forward_via_laplace(SinXn(2.0), 1, 1.0) == pytest.approx(0.4, rel=1e-12)


@pytest.mark.parametrize("f, fx, n, y", [
    (CosXn(0.5), lambda x: mpmath.cos(0.5 * x**2), 2, 0.8),
    (ErfArg(0.5), lambda x: mpmath.erf(0.5 * x), 2, 1.0),
    (Power(1.5), lambda x: x**1.5, 4, 1.2),
])
def test_forward_numeric_against_direct_integration(f, fx, n, y):
    assert forward_numeric(f, n, y) == pytest.approx(direct_quad(fx, n, y), rel=1e-10)


def test_shift_examples():
    assert shift_rule(Const(), 1.0, 2, 1.0) == pytest.approx(0.25, rel=1e-12)
    assert shift_rule(Const(), 0.0, 2, 1.0) == pytest.approx(0.5, rel=1e-12)
    want = 4 / (2 * (16 + 1))
    got = forward_numeric(Damped(CosXn(1.0), 3.0), 2, 1.0)
    assert got == pytest.approx(want, rel=1e-10)
    assert shift_rule(CosXn(1.0), 3.0, 2, 1.0, closed_form=table.closed_form_of) == pytest.approx(want, rel=1e-14)
    # an independent check of the damped integrand itself
    assert direct_quad(lambda x: mpmath.exp(-3 * x * x) * mpmath.cos(x * x), 2, 1.0) == pytest.approx(want, rel=1e-10)


def test_shift_rejects_negative():
    with pytest.raises(ValidityError):
        shift_rule(Const(), -1.0, 2, 1.0)


def test_validity_errors_name_condition():
    with pytest.raises(ValidityError, match=r"Re\(y\)>0"):
        forward_numeric(Const(), 2, 0.0)
    with pytest.raises(ValidityError, match="k > -n"):
        forward_numeric(Power(-3.0), 2, 1.0)
    bb = BlackBox(evaluator=lambda x: np.exp(x**2), growth_alpha=1.0)
    with pytest.raises(ValidityError, match="y > alpha"):
        forward_numeric(bb, 2, 0.9)


def test_blackbox_with_growth():
    # exp(+x^2) has exponential order alpha = 1: transform 1/(n(y^n - 1))
    bb = BlackBox(evaluator=lambda x: np.exp(x**2), growth_alpha=1.0)
    for y in (1.2, 2.0):
        assert forward_numeric(bb, 2, y) == pytest.approx(1 / (2 * (y**2 - 1)), rel=1e-9)
        assert forward_via_laplace(bb, 2, y) == pytest.approx(1 / (2 * (y**2 - 1)), rel=1e-9)


def test_quad_order_env(monkeypatch):
    monkeypatch.setenv(transform.QUAD_ORDER_ENV, "48")
    assert transform.default_quad_order() == 48
    assert forward_numeric(Const(), 2, 1.0) == pytest.approx(0.5, rel=1e-12)


@given(st.floats(-3, 3), st.floats(-3, 3), st.sampled_from([1, 2, 4]), st.sampled_from([0.6, 1.0, 2.0]))
@settings(max_examples=40, deadline=None)
def test_linearity(alpha, beta, n, y):
    f = BlackBox(evaluator=lambda x: np.cos(0.5 * x**n), name="cos")
    g = BlackBox(evaluator=lambda x: np.exp(-0.3 * x**n), name="exp")
    combo = Combination(((alpha, f), (beta, g)))
    lhs = forward_numeric(combo, n, y)
    rhs = alpha * forward_numeric(f, n, y) + beta * forward_numeric(g, n, y)
    scale = abs(alpha) * abs(forward_numeric(f, n, y)) + abs(beta) * abs(forward_numeric(g, n, y))
    assert abs(lhs - rhs) <= 1e-10 * max(scale, 1e-300)


@pytest.mark.parametrize("f, ref", [
    (Const(), lambda y: 1 / y),
    (Power(2.0), lambda y: 2 / y**3),
    (Power(5.0), lambda y: 120 / y**6),
    (SinXn(3.0), lambda y: 3 / (y * y + 9)),
])
def test_order_one_is_laplace(f, ref):
    for y in (0.6, 1.0, 2.0, 4.0):
        assert forward_numeric(f, 1, y) == pytest.approx(ref(y), rel=1e-8)


@pytest.mark.parametrize("pid", ["const", "power", "exp_neg_axn", "bessel_j0", "erfc_inv", "erf", "gauss_x2n"])
def test_monotone_decay_for_nonnegative_f(pid):
    params = table.VALIDATION_PARAMS[pid]
    f = table.make_function(pid, **params)
    for n in table.VALIDATION_N:
        if pid == "bessel_j0":
            # J_0 changes sign; only the x range where it stays positive matters for small a
            continue
        vals = [forward_numeric(f, n, y) for y in table.VALIDATION_Y]
        assert all(a > b for a, b in zip(vals, vals[1:]))
