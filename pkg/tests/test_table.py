import json
import math

import mpmath
import pytest

from lntx import table, transform
from lntx.errors import LntxError, QuadratureError, ValidityError


def test_examples():
    assert table.eval_pair("bessel_j0", 2, 1.0, a=1.0) == pytest.approx(0.5 * math.exp(-1), rel=1e-15)
    assert table.eval_pair("power", 2, 3.0, k=0.0) == pytest.approx(1 / 18, rel=1e-15)
    assert table.eval_pair("erf", 2, 1.0, a=1.0) == pytest.approx(0.5 * 2**-0.5, rel=1e-15)


def test_list_pairs():
    pairs = table.list_pairs()
    assert len(pairs) == 10
    ids = [p["id"] for p in pairs]
    assert len(set(ids)) == 10
    assert all(p["validity"] for p in pairs)
    assert ids == list(table.PAIRS)


def test_catalog_json_round_trips():
    doc = json.loads(table.catalog_json())
    assert doc["schema"] == 1
    entries = doc["pairs"]
    assert len(entries) == 11 and entries[-1]["id"] == "shift_rule"
    for e in entries[:-1]:
        assert set(e) >= {"id", "latex", "params", "validity", "sample_values"}
    assert table.catalog_json() == table.catalog_json()


def test_unknown_pair():
    with pytest.raises(LntxError, match="unknown pair"):
        table.eval_pair("nope", 2, 1.0)


def test_parameter_checks():
    with pytest.raises(ValidityError, match="missing"):
        table.eval_pair("cos_axn", 2, 1.0)
    with pytest.raises(ValidityError, match="takes parameters"):
        table.eval_pair("const", 2, 1.0, a=1.0)
    with pytest.raises(ValidityError, match=r"Re\(y\)>0"):
        table.eval_pair("erf", 2, 0.0, a=1.0)
    with pytest.raises(ValidityError, match=r"Re\(v\) > -1"):
        table.eval_pair("bessel_jv", 2, 1.0, a=1.0, v=-2.0)


def test_exp_limit_is_const():
    for n in (1, 2, 4):
        for y in (0.6, 1.0, 2.0):
            a = table.eval_pair("exp_neg_axn", n, y, a=1e-6)
            c = table.eval_pair("const", n, y)
            assert a == pytest.approx(c, rel=1e-5)


def test_jv_at_zero_order_is_j0():
    for n in (1, 2, 4, 8):
        for y in (0.6, 1.0, 4.0):
            assert table.eval_pair("bessel_jv", n, y, a=0.7, v=0.0) == table.eval_pair("bessel_j0", n, y, a=0.7)


def test_gauss_image_large_y_has_no_overflow():
    # y^n / (2 sqrt a) ~ 4.6e4: exp(z^2) alone would overflow
    v = table.eval_pair("gauss_x2n", 8, 4.0, a=0.5)
    with mpmath.workdps(30):
        z = mpmath.mpf(4.0) ** 8 / (2 * mpmath.sqrt(0.5))
        want = mpmath.sqrt(mpmath.pi) / (16 * mpmath.sqrt(0.5)) * mpmath.exp(z * z) * mpmath.erfc(z)
    assert v == pytest.approx(float(want), rel=1e-13)


@pytest.mark.parametrize("pid", list(table.PAIRS))
def test_closed_form_against_mpmath_integral(pid):
    params = table.VALIDATION_PARAMS[pid]
    f = table.make_function(pid, **params)
    n, y = 2, 1.3
    with mpmath.workdps(30):
        def integrand(x):
            return x ** (n - 1) * mpmath.exp(-(x * y) ** n) * float(f.evaluate(float(x), n))
        want = float(mpmath.quad(integrand, [0, 0.5, 1, 2, 4, 8]))
    assert table.eval_pair(pid, n, y, **params) == pytest.approx(want, rel=1e-9)


def test_power_real_exponent():
    # non-integer k > -n is admitted
    for k in (-1.9, -1.5, 0.5, 2.25):
        f = table.make_function("power", k=k)
        assert transform.forward_numeric(f, 2, 1.1) == pytest.approx(table.eval_pair("power", 2, 1.1, k=k), rel=1e-9)


def test_power_too_close_to_singular_limit_raises():
    with pytest.raises(QuadratureError):
        transform.forward_numeric(table.make_function("power", k=-1.95), 2, 1.1)


def test_series_names():
    names = table.series_names()
    assert "bessel_j0_image" in names and "const" in names
    with pytest.raises(LntxError):
        table.image_series("cos_axn", 2, a=1.0)
