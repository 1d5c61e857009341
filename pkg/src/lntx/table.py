"""Catalog of closed-form transform pairs.

Each image is built from ``expr`` nodes so that it can be evaluated and also
differentiated exactly (the moment identity needs repeated delta_y
derivatives). Pairs whose image is a power series in 1/y^n also expose that
series for term-by-term inversion.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable

from . import expr as E
from . import specfun
from .errors import LntxError, ValidityError
from .functions import (BesselJ0Arg, BesselJvArg, Const, CosXn, ErfArg, ErfcInvArg,
                        ExpNegAXn, FunctionSpec, GaussXn2, Power, SinXn)
from .inversion import PowerSeriesInvS
from .transform import as_order, shifted_abscissa

SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class TransformPair:
    id: str
    cls: type
    latex_f: str
    latex_image: str
    validity: str
    image: Callable[..., E.Expr]          # (n, **params) -> Expr in y
    series: Callable[..., PowerSeriesInvS] | None = None

    @property
    def param_names(self):
        return tuple(VALIDATION_PARAMS[self.id])

    def make_function(self, **params) -> FunctionSpec:
        return self.cls(**params)

    def metadata(self) -> dict:
        return {
            "id": self.id,
            "latex": f"{self.latex_f} \\mapsto {self.latex_image}",
            "params": list(self.param_names),
            "validity": self.validity,
            "series_invertible": self.series is not None,
        }


def _yn(n):
    return E.power(E.Y, n)


def _const_image(n):
    return E.mul(1.0 / n, E.power(E.Y, -n))


def _power_image(n, k):
    return E.mul(specfun.gamma(k / n + 1.0) / n, E.power(E.Y, -(n + k)))


def _cos_image(n, a):
    return E.mul(1.0 / n, _yn(n), E.power(E.add(E.power(E.Y, 2 * n), a * a), -1.0))


def _sin_image(n, a):
    return E.mul(a / n, E.power(E.add(E.power(E.Y, 2 * n), a * a), -1.0))


def _exp_image(n, a):
    return E.mul(1.0 / n, E.power(E.add(_yn(n), a**n), -1.0))


def _jv_image(n, a, v):
    b = a**n
    return E.mul(b ** (0.5 * v) / n, E.power(E.Y, -n * (v + 1.0)),
                 E.exp(E.mul(-b, E.power(E.Y, -n))))


def _j0_image(n, a):
    return _jv_image(n, a, 0.0)


def _erfc_inv_image(n, a):
    return E.mul(1.0 / n, E.power(E.Y, -n),
                 E.exp(E.mul(-(a ** (0.5 * n)), E.power(E.Y, 0.5 * n))))


def _erf_image(n, a):
    return E.mul(a ** (0.5 * n) / n, E.power(E.Y, -n),
                 E.power(E.add(_yn(n), a**n), -0.5))


def _gauss_image(n, a):
    # exp(z^2) erfc(z) is kept as one node so large y^n does not overflow.
    ra = math.sqrt(a)
    return E.mul(SQRT_PI / (2.0 * n * ra), E.erfcx(E.mul(0.5 / ra, _yn(n))))


def _const_series(n):
    return PowerSeriesInvS((1.0 / n,), 1.0)


def _power_series(n, k):
    return PowerSeriesInvS((specfun.gamma(k / n + 1.0) / n,), k / n + 1.0)


def _exp_series(n, a):
    b = a**n
    return PowerSeriesInvS(lambda m: (-b) ** m / n, 1.0)


def _jv_series(n, a, v):
    b = a**n
    lead = b ** (0.5 * v) / n

    def coeff(m):
        return lead * math.exp(m * math.log(b) - math.lgamma(m + 1)) * (-1.0) ** m

    return PowerSeriesInvS(coeff, v + 1.0)


def _j0_series(n, a):
    return _jv_series(n, a, 0.0)


PAIRS: dict[str, TransformPair] = {p.id: p for p in (
    TransformPair("const", Const, "1", "\\frac{1}{n y^n}", "Re(y) > 0",
                  _const_image, _const_series),
    TransformPair("power", Power, "x^k",
                  "\\frac{\\Gamma(k/n + 1)}{n y^{n+k}}", "k > -n, Re(y) > 0",
                  _power_image, _power_series),
    TransformPair("cos_axn", CosXn, "\\cos(a x^n)",
                  "\\frac{y^n}{n(y^{2n} + a^2)}", "Re(y) > 0", _cos_image),
    TransformPair("sin_axn", SinXn, "\\sin(a x^n)",
                  "\\frac{a}{n(y^{2n} + a^2)}", "Re(y) > 0", _sin_image),
    TransformPair("exp_neg_axn", ExpNegAXn, "e^{-a^n x^n}",
                  "\\frac{1}{n(y^n + a^n)}", "Re(a) > 0, Re(y) > 0 (a < y sufficient)",
                  _exp_image, _exp_series),
    TransformPair("bessel_j0", BesselJ0Arg, "J_0(2 a^{n/2} x^{n/2})",
                  "\\frac{1}{n y^n} e^{-a^n / y^n}", "Re(a) > 0, Re(y) > 0",
                  _j0_image, _j0_series),
    TransformPair("bessel_jv", BesselJvArg, "x^{nv/2} J_v(2 a^{n/2} x^{n/2})",
                  "\\frac{a^{nv/2}}{n} y^{-n(v+1)} e^{-a^n / y^n}",
                  "Re(a) > 0, Re(v) > -1, Re(y) > 0", _jv_image, _jv_series),
    TransformPair("erfc_inv", ErfcInvArg, "\\mathrm{erfc}(a^{n/2} / (2 x^{n/2}))",
                  "\\frac{1}{n y^n} e^{-a^{n/2} y^{n/2}}", "Re(a) > 0, Re(y) > 0",
                  _erfc_inv_image),
    TransformPair("erf", ErfArg, "\\mathrm{erf}(a^{n/2} x^{n/2})",
                  "\\frac{a^{n/2}}{n} y^{-n} (y^n + a^n)^{-1/2}",
                  "-Re(a) < y, Re(y) > 0", _erf_image),
    TransformPair("gauss_x2n", GaussXn2, "e^{-a x^{2n}}",
                  "\\frac{\\sqrt{\\pi}}{2n\\sqrt{a}} e^{y^{2n}/(4a)} \\mathrm{erfc}(y^n / (2\\sqrt{a}))",
                  "Re(a) > 0, Re(y) > 0", _gauss_image),
)}

# Parameters used by the validation grid n in {1,2,4,8}, y in {0.6,1,2,4}.
# a = 0.5 keeps every image within a few decades of 1 across that grid.
VALIDATION_PARAMS: dict[str, dict] = {
    "const": {},
    "power": {"k": 3.0},
    "cos_axn": {"a": 0.5},
    "sin_axn": {"a": 0.5},
    "exp_neg_axn": {"a": 0.5},
    "bessel_j0": {"a": 0.5},
    "bessel_jv": {"a": 0.5, "v": 1.5},
    "erfc_inv": {"a": 0.5},
    "erf": {"a": 0.5},
    "gauss_x2n": {"a": 0.5},
}

VALIDATION_N = (1, 2, 4, 8)
VALIDATION_Y = (0.6, 1.0, 2.0, 4.0)

SHIFT_RULE = {
    "id": "shift_rule",
    "latex": "e^{-a x^n} f(x) \\mapsto F\\left((y^n + a)^{1/n}\\right)",
    "params": ["a"],
    "validity": "(y^n + a)^{1/n} inside the region of f",
}


def get_pair(pair_id: str) -> TransformPair:
    try:
        return PAIRS[pair_id]
    except KeyError:
        raise LntxError(f"unknown pair id {pair_id!r}; known: {', '.join(PAIRS)}") from None


def _check_params(pair: TransformPair, params: dict) -> dict:
    allowed = set(VALIDATION_PARAMS[pair.id])
    extra = set(params) - allowed
    if extra:
        raise ValidityError(f"pair {pair.id!r} takes parameters {sorted(allowed)}, got {sorted(extra)}")
    missing = allowed - set(params)
    if missing:
        raise ValidityError(f"pair {pair.id!r} is missing parameters {sorted(missing)}")
    return {k: float(v) for k, v in params.items()}


def make_function(pair_id: str, **params) -> FunctionSpec:
    pair = get_pair(pair_id)
    return pair.make_function(**_check_params(pair, params))


def closed_form(pair_id: str, n, **params) -> E.Expr:
    """Image of the pair as an expression in y (validity not checked)."""
    pair = get_pair(pair_id)
    return pair.image(as_order(n), **_check_params(pair, params))


def eval_pair(pair_id: str, n, y: float, **params) -> float:
    """Closed-form image at y after checking the validity region."""
    n = as_order(n)
    make_function(pair_id, **params).validate(n, float(y))
    return closed_form(pair_id, n, **params)(float(y))


def image_series(pair_id: str, n, **params) -> PowerSeriesInvS:
    pair = get_pair(pair_id)
    if pair.series is None:
        raise LntxError(f"pair {pair_id!r} has no power-series image in 1/y^n")
    n = as_order(n)
    f = make_function(pair_id, **params)
    f.validate(n)
    return pair.series(n, **_check_params(pair, params))


def closed_form_of(f: FunctionSpec, n, y: float) -> float:
    """Closed-form image for a catalog FunctionSpec instance."""
    return eval_pair(f.family, n, y, **f.params())


def shift_closed_form(pair_id: str, shift: float, n, y: float, **params) -> float:
    """Shift rule through the catalog: the image of exp(-shift x^n) f is F((y^n + shift)^{1/n})."""
    if not shift >= 0:
        raise ValidityError(f"shift a >= 0 required: a = {shift}")
    n = as_order(n)
    return eval_pair(pair_id, n, shifted_abscissa(float(y), shift, n), **params)


def list_pairs() -> list[dict]:
    return [p.metadata() for p in PAIRS.values()]


def catalog(sample_n: int = 2, sample_y=(1.0, 2.0)) -> list[dict]:
    out = []
    for pid, pair in PAIRS.items():
        params = VALIDATION_PARAMS[pid]
        meta = pair.metadata()
        meta["params"] = dict(params)
        meta["sample_values"] = [
            {"n": sample_n, "y": y, "value": eval_pair(pid, sample_n, y, **params)}
            for y in sample_y
        ]
        out.append(meta)
    out.append(dict(SHIFT_RULE))
    return out


def catalog_json(**kw) -> str:
    return json.dumps({"schema": 1, "pairs": catalog(**kw)}, indent=2)


# Named series for the CLI. A bare pair id is the catalog image and inverts
# back to f; "<id>_image" is n times that image, the form the residue formula
# works with, and inverts to n f (e.g. y^{-n} exp(-a^n / y^n) -> n J_0).
def named_series(name: str, n, **params):
    """(series, image expression) for a pair id or ``<id>_image``."""
    scale = 1.0
    pid = name
    if name.endswith("_image"):
        pid = name[: -len("_image")]
        scale = float(as_order(n))
    pair = get_pair(pid)
    base = image_series(pid, n, **params)
    expr_ = closed_form(pid, n, **params)
    if scale == 1.0:
        return base, expr_, pair
    if base.length is None:
        coeffs = lambda m, c=base.coefficient: scale * c(m)  # noqa: E731
    else:
        coeffs = tuple(scale * base.coefficient(m) for m in range(base.length))
    return PowerSeriesInvS(coeffs, base.offset), E.mul(scale, expr_), pair


def series_names() -> list[str]:
    ids = [pid for pid, p in PAIRS.items() if p.series is not None]
    return ids + [f"{pid}_image" for pid in ids]
