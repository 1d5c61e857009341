import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lntx import operator as op
from lntx import table, transform
from lntx.errors import DomainError, ValidityError
from lntx.functions import BlackBox, Const, CosXn, ExpNegAXn, Power, SinXn


def test_delta_of_xn_is_n():
    assert op.delta_x(Power(2.0), 2, 1.7, 1) == pytest.approx(2.0, rel=1e-15)
    bb = BlackBox(evaluator=lambda x: x**2)
    assert op.delta_x(bb, 2, 1.7, 1) == pytest.approx(2.0, rel=1e-9)


def test_delta_of_const_is_zero():
    assert op.delta_x(Const(), 2, 1.0, 1) == 0.0


def test_delta_of_exp_chain_rule():
    n, a, x = 2, 1.0, 0.5
    want = -n * a**n * math.exp(-(a**n) * x**n)
    assert op.delta_x(ExpNegAXn(a), n, x, 1) == pytest.approx(want, rel=1e-14)
    h = 1e-6
    fd = (math.exp(-((x + h) ** 2)) - math.exp(-((x - h) ** 2))) / (2 * h) / x
    assert op.delta_x(ExpNegAXn(a), n, x, 1) == pytest.approx(fd, rel=1e-8)


def test_delta_rejects_zero():
    with pytest.raises(DomainError, match="x > 0"):
        op.delta_x(Const(), 2, 0.0, 1)


@pytest.mark.parametrize("f", [CosXn(0.7), SinXn(0.7), ExpNegAXn(0.8), Power(3.0)])
@pytest.mark.parametrize("n", [1, 2, 4])
def test_blackbox_differences_match_analytic(f, n):
    bb = BlackBox(evaluator=lambda x: f.evaluate(x, n))
    for x in (0.3, 0.9, 1.4):
        for k in (1, 2):
            exact = op.delta_x(f, n, x, k)
            assert op.delta_x(bb, n, x, k) == pytest.approx(exact, rel=1e-6, abs=1e-8)


def test_blackbox_kink_is_flagged():
    bb = BlackBox(evaluator=lambda x: np.abs(x - 1.0))
    with pytest.raises(DomainError, match="smooth"):
        op.delta_x(bb, 2, 1.0, 1)


@given(st.sampled_from(list(table.VALIDATION_PARAMS)), st.sampled_from([1, 2, 4]), st.floats(0.2, 1.5))
@settings(max_examples=60, deadline=None)
def test_composition(pid, n, x):
    f = table.make_function(pid, **table.VALIDATION_PARAMS[pid])
    once = op.delta_spec(f, 1)
    assert op.delta_x(f, n, x, 2) == pytest.approx(op.delta_x(once, n, x, 1), rel=1e-9, abs=1e-12)
    # finite difference of the first iterate, as an independent check
    bb = BlackBox(evaluator=lambda t: op.delta_x(f, n, t, 1))
    assert op.delta_x(f, n, x, 2) == pytest.approx(op.delta_x(bb, n, x, 1), rel=1e-6, abs=1e-7)


def test_thm21_const():
    n, y = 2, 1.4
    F = table.eval_pair("const", n, y)
    assert op.thm21_rhs(F, n, y, 1, op.initial_data(Const(), n, 1)) == pytest.approx(0.0, abs=1e-15)


def test_thm21_power():
    n, y = 2, 1.3
    F = table.eval_pair("power", n, y, k=2.0)
    rhs = op.thm21_rhs(F, n, y, 1, op.initial_data(Power(2.0), n, 1))
    assert rhs == pytest.approx(1 / y**n, rel=1e-14)
    assert transform.forward_numeric(op.delta_spec(Power(2.0), 1), n, y) == pytest.approx(1 / y**n, rel=1e-12)


def test_thm21_exp_second_order():
    f, n, y = ExpNegAXn(1.0), 2, 1.0
    rhs = op.thm21_rhs(table.closed_form_of(f, n, y), n, y, 2, op.initial_data(f, n, 2))
    lhs = transform.forward_numeric(op.delta_spec(f, 2), n, y)
    assert lhs == pytest.approx(rhs, rel=1e-6)


def test_thm21_length_mismatch():
    with pytest.raises(ValidityError, match="initial data"):
        op.thm21_rhs(1.0, 2, 1.0, 3, op.InitialData(1.0, (0.0,)))


def test_blackbox_needs_explicit_initial_data():
    with pytest.raises(ValidityError, match="InitialData"):
        op.initial_data(BlackBox(evaluator=np.cos), 2, 2)


def test_thm22_examples():
    assert op.thm22_moment("const", 2, {}, 1, 1.0) == pytest.approx(0.5, rel=1e-15)
    assert op.thm22_moment("const", 2, {}, 0, 1.7) == table.eval_pair("const", 2, 1.7)
    m = op.thm22_moment("exp_neg_axn", 2, {"a": 1.0}, 1, 1.0)
    q = transform.forward_numeric(transform.Moment(ExpNegAXn(1.0), 1), 2, 1.0)
    assert m == pytest.approx(q, rel=1e-8)
    # x^2 e^{-x^2} at n = 2, y = 1: 1/(2 (1 + 1)^2)
    assert m == pytest.approx(1 / 8, rel=1e-14)


def test_thm22_power_exact():
    # x^{kn} x^p has closed form Gamma((p + kn)/n + 1) / (n y^{n + p + kn})
    n, p, y = 4, 1.5, 1.3
    for k in (1, 2, 3):
        want = math.gamma((p + k * n) / n + 1) / (n * y ** (n + p + k * n))
        assert op.thm22_moment("power", n, {"k": p}, k, y) == pytest.approx(want, rel=1e-13)


def test_thm22_validity():
    with pytest.raises(ValidityError):
        op.thm22_moment("erf", 2, {"a": 1.0}, 1, -1.0)
