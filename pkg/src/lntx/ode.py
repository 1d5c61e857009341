"""Bessel-type ODEs solved through the transform.

Two families are handled, both with the boundary condition z(0+) = 0:

    family 1:  x z'' - (2v + n - 3) z' + x^{n-1} z = 0,   v = 2^m + 1 > n
    family 2:  x z'' - (n^2 - 1) z' + x^{n-1} z = 0

Transforming turns each into a first-order equation z_bar' + A(y) z_bar = 0
with A(y) = p/y - 1/(n y^{n+1}), where p = 2(n + v - 1) or n(n + 1). Its
solution C y^{-p} exp(-1/(n^2 y^n)) expands in powers of 1/y^n, and inverting
term by term gives x^{n alpha/2} J_alpha((2/n) x^{n/2}) with alpha = p/n - 1
and C = n^{-alpha-1}.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import specfun
from .errors import LntxError, ValidityError
from .inversion import PowerSeriesInvS, inverse_term_coefficients
from .transform import as_order

COEFF_RTOL = 1e-12
COEFF_TERMS = 40


def _is_power_of_two(m: int) -> bool:
    return m >= 1 and m & (m - 1) == 0


@dataclass(frozen=True)
class OdeProblem:
    family: int
    n: int
    v: int | None = None

    def __post_init__(self):
        if self.family not in (1, 2):
            raise ValidityError(f"family must be 1 or 2, got {self.family}")
        object.__setattr__(self, "n", as_order(self.n))
        if self.family == 1:
            v = self.v
            if v is None or float(v) != int(v):
                raise ValidityError(f"v must equal 2^m+1 and exceed n: v = {v}, n = {self.n}")
            v = int(v)
            if not (_is_power_of_two(v - 1) and v > self.n):
                raise ValidityError(f"v must equal 2^m+1 and exceed n: v = {v}, n = {self.n}")
            object.__setattr__(self, "v", v)
        elif self.v is not None:
            raise ValidityError("family 2 takes no v")

    @property
    def first_order_coeff(self) -> int:
        """c1 in x z'' - c1 z' + x^{n-1} z = 0."""
        n = self.n
        return 2 * self.v + n - 3 if self.family == 1 else n * n - 1

    @property
    def decay_power(self) -> int:
        """p in A(y) = p/y - 1/(n y^{n+1})."""
        n = self.n
        return 2 * (n + self.v - 1) if self.family == 1 else n * (n + 1)

    @property
    def alpha(self) -> Fraction:
        return Fraction(self.decay_power, self.n) - 1

    def describe(self) -> str:
        c1 = self.first_order_coeff
        return f"x z'' - {c1} z' + x^{self.n - 1} z = 0"


@dataclass(frozen=True)
class TransformOde:
    """z_bar'(y) + A(y) z_bar(y) = B(y) with A = p/y - 1/(n y^{n+1}), B = 0."""

    n: int
    p: int

    def A(self, y):
        y = np.asarray(y, dtype=float)
        return self.p / y - 1.0 / (self.n * y ** (self.n + 1))

    def B(self, y):
        return np.zeros_like(np.asarray(y, dtype=float))

    def describe(self) -> str:
        return f"z_bar' + ({self.p}/y - 1/({self.n} y^{self.n + 1})) z_bar = 0"


@dataclass(frozen=True)
class TransformImage:
    """C y^{power_exponent} exp(exp_coefficient / y^n)."""

    n: int
    C: float
    power_exponent: int
    exp_coefficient: float

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        out = self.C * y**self.power_exponent * np.exp(self.exp_coefficient / y**self.n)
        return float(out) if out.ndim == 0 else out

    def series(self) -> PowerSeriesInvS:
        """Expansion sum_m C (c^m / m!) y^{-n m + power_exponent}."""
        c = self.exp_coefficient
        C = self.C

        def coeff(m):
            if c == 0.0:
                return C if m == 0 else 0.0
            return C * math.copysign(1.0, c) ** m * math.exp(m * math.log(abs(c)) - math.lgamma(m + 1))

        return PowerSeriesInvS(coeff, -self.power_exponent / self.n)

    def to_dict(self) -> dict:
        return {"C": self.C, "power_exponent": self.power_exponent,
                "exp_coefficient": self.exp_coefficient,
                "form": "C * y^power_exponent * exp(exp_coefficient / y^n)"}


def reduce_to_transform_ode(p: OdeProblem) -> TransformOde:
    return TransformOde(p.n, p.decay_power)


def solve_transform_ode(p: OdeProblem) -> TransformImage:
    n = p.n
    C = float(n) ** (-float(p.alpha) - 1.0)
    return TransformImage(n, C, -p.decay_power, -1.0 / (n * n))


@dataclass(frozen=True)
class OdeSolution:
    """z(x) = x^{prefactor_exponent} J_{bessel_order}(arg_scale x^{n/2})."""

    problem: OdeProblem
    prefactor_exponent: Fraction
    bessel_order: Fraction
    arg_scale: Fraction
    C: float
    image: TransformImage

    def _parts(self, x):
        x = np.asarray(x, dtype=float)
        n = self.problem.n
        P = float(self.prefactor_exponent)
        s = float(self.arg_scale)
        q = 0.5 * n
        a = int(self.bessel_order)
        t = s * x**q
        J = [specfun.bessel_j_int(a + d, t) for d in (-2, -1, 0, 1, 2)]
        return x, P, s, q, t, J

    def __call__(self, x):
        x, P, s, q, t, J = self._parts(x)
        out = x**P * J[2]
        return float(out) if np.ndim(out) == 0 else out

    def derivatives(self, x):
        """z, z', z'' from Bessel recurrences."""
        x, P, s, q, t, J = self._parts(x)
        j0 = J[2]
        j1 = 0.5 * (J[1] - J[3])
        j2 = 0.25 * (J[0] - 2.0 * J[2] + J[4])
        dt = s * q * x ** (q - 1)
        d2t = s * q * (q - 1) * x ** (q - 2)
        z = x**P * j0
        dz = P * x ** (P - 1) * j0 + x**P * j1 * dt
        d2z = (P * (P - 1) * x ** (P - 2) * j0 + 2 * P * x ** (P - 1) * j1 * dt
               + x**P * (j2 * dt * dt + j1 * d2t))
        return z, dz, d2z

    def describe(self) -> str:
        return (f"z(x) = x^({self.prefactor_exponent}) J_{self.bessel_order}"
                f"(({self.arg_scale}) x^({Fraction(self.problem.n, 2)}))")

    def to_dict(self) -> dict:
        p = self.problem
        return {
            "family": p.family, "n": p.n, "v": p.v,
            "alpha": str(self.bessel_order),
            "prefactor_exponent": str(self.prefactor_exponent),
            "arg_scale": str(self.arg_scale),
            "C": self.C,
            "image": self.image.to_dict(),
        }


def bessel_series_coefficients(alpha: int, n: int, terms: int):
    """(x exponent, coefficient) of x^{n alpha/2} J_alpha((2/n) x^{n/2}) term by term."""
    out = []
    for m in range(terms):
        # (-1)^m / (m! Gamma(m+alpha+1)) * n^{-(2m+alpha)} * x^{n m + n alpha}
        mag = -(math.lgamma(m + 1) + math.lgamma(m + alpha + 1) + (2 * m + alpha) * math.log(n))
        out.append((n * (m + alpha), (-1.0) ** m * math.exp(mag)))
    return out


def solve(p: OdeProblem, terms: int = COEFF_TERMS) -> OdeSolution:
    """Invert the image series and confirm it is the Bessel solution term by term."""
    image = solve_transform_ode(p)
    n = p.n
    alpha = p.alpha
    if alpha.denominator != 1:
        raise LntxError(f"Bessel order {alpha} is not an integer")
    inverted = inverse_term_coefficients(image.series(), n, terms)
    expected = bessel_series_coefficients(int(alpha), n, terms)
    for m, ((e1, c1), (e2, c2)) in enumerate(zip(inverted, expected)):
        if abs(e1 - e2) > 1e-12 * max(1.0, abs(e2)) or abs(c1 / c2 - 1.0) > COEFF_RTOL:
            raise LntxError(f"inverted series term {m} does not match the Bessel series: "
                            f"{c1} x^{e1} vs {c2} x^{e2}")
    return OdeSolution(
        problem=p,
        prefactor_exponent=Fraction(n) * alpha / 2,
        bessel_order=alpha,
        arg_scale=Fraction(2, n),
        C=image.C,
        image=image,
    )


def residual(p: OdeProblem, sol: OdeSolution, x):
    """|x z'' - c1 z' + x^{n-1} z| divided by the largest of the three terms."""
    xa = np.asarray(x, dtype=float)
    if (xa <= 0).any():
        raise ValidityError("residual needs x > 0")
    z, dz, d2z = sol.derivatives(xa)
    t1 = xa * d2z
    t2 = -p.first_order_coeff * dz
    t3 = xa ** (p.n - 1) * z
    scale = np.maximum(np.maximum(np.abs(t1), np.abs(t2)), np.abs(t3))
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(scale > 0, np.abs(t1 + t2 + t3) / scale, 0.0)
    return float(out) if out.ndim == 0 else out


def solution_csv(sol: OdeSolution, xs) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "value"])
    for x in xs:
        w.writerow([repr(float(x)), repr(float(sol(x)))])
    return buf.getvalue()


def solution_json(sol: OdeSolution) -> str:
    return json.dumps({"schema": 1, **sol.to_dict()}, indent=2)
