"""The delta-derivative (1/x^{n-1}) d/dx and the two operational identities.

For f(x) = g(x^n) the operator is n d/dw with w = x^n, so catalog families
get exact iterates n^k g^{(k)}(x^n). Black-box inputs fall back to finite
differences in x.

Identities implemented:

    L_n{delta^k f; y} = (n y^n)^k F(y) - sum_{j<k} (n y^n)^{k-1-j} delta^j f(0+)
    L_n{x^{kn} f; y}  = ((-1)^k / n^k) delta_y^k F(y)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import ClassVar

import numpy as np

from . import expr as E
from . import table
from .errors import DomainError, ValidityError
from .functions import FunctionSpec
from .transform import as_order

# Relative disagreement between the two Richardson levels that is taken to
# mean the function is not smooth enough at x.
FD_DIVERGENCE_RTOL = 1e-4

_D1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_D2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0
_OFFSETS = np.array([-2.0, -1.0, 0.0, 1.0, 2.0])


@dataclass(frozen=True)
class DeltaDerivative:
    n: int
    k: int

    def __post_init__(self):
        object.__setattr__(self, "n", as_order(self.n))
        if int(self.k) != self.k or self.k < 0:
            raise ValidityError(f"k >= 0 integer required: k = {self.k}")

    def __call__(self, f: FunctionSpec, x):
        return delta_x(f, self.n, x, self.k)


def _stencil(f: FunctionSpec, n: int, x: float, h: float, weights, power: int) -> float:
    vals = np.asarray(f.evaluate(x + h * _OFFSETS, n), dtype=float)
    return float(weights @ vals) / h**power


def _richardson(f, n, x, h, weights, power):
    coarse = _stencil(f, n, x, h, weights, power)
    fine = _stencil(f, n, x, 0.5 * h, weights, power)
    est = (16.0 * fine - coarse) / 15.0
    scale = max(abs(fine), abs(coarse))
    if not np.isfinite(est) or abs(fine - coarse) > FD_DIVERGENCE_RTOL * max(scale, 1e-300) and scale > 1e-12:
        raise DomainError(f"finite differences diverge at x = {x}; f is not smooth enough there")
    return est


def _fd_delta(f: FunctionSpec, n: int, x: float, k: int) -> float:
    if k > 2:
        raise DomainError("finite-difference delta-derivative is limited to k <= 2")
    cap = 0.25 * x
    d1 = _richardson(f, n, x, min(max(1e-5, 1e-5 * x), cap), _D1, 1)
    if k == 1:
        return d1 / x ** (n - 1)
    # second derivative needs a wider step to keep roundoff at ~eps/h^2
    d2 = _richardson(f, n, x, min(max(1e-3, 1e-3 * x), cap), _D2, 2)
    return d2 / x ** (2 * n - 2) - (n - 1) * d1 / x ** (2 * n - 1)


def delta_x(f: FunctionSpec, n, x, k: int = 1):
    """k-fold delta-derivative of f at x > 0."""
    n = as_order(n)
    k = int(k)
    if k < 0:
        raise ValidityError(f"k >= 0 required: k = {k}")
    xa = np.asarray(x, dtype=float)
    if (xa <= 0).any():
        raise DomainError("delta-derivative is singular at x = 0; x > 0 required")
    if k == 0:
        return f.evaluate(xa, n)
    if f.has_analytic_derivatives:
        out = n**k * np.asarray(f.dg(k, xa**n, n), dtype=float)
        return float(out) if out.ndim == 0 else out
    out = np.array([_fd_delta(f, n, float(xi), k) for xi in np.atleast_1d(xa).ravel()])
    out = out.reshape(xa.shape)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class DeltaOf(FunctionSpec):
    """delta_x^k f as an input function (catalog families only)."""

    base: FunctionSpec = None
    k: int = 1
    family: ClassVar[str] = "delta"

    def validate(self, n, y=None):
        self.base.validate(n, y)
        if not self.base.has_analytic_derivatives:
            raise ValidityError("delta_x^k of a black box has no analytic form")

    def g(self, w, n):
        return n**self.k * self.base.dg(self.k, w, n)

    def dg(self, j, w, n):
        return n**self.k * self.base.dg(self.k + j, w, n)

    def dg0(self, j, n):
        return n**self.k * self.base.dg0(self.k + j, n)


def delta_spec(f: FunctionSpec, k: int) -> DeltaOf:
    return DeltaOf(base=f, k=int(k))


@dataclass(frozen=True)
class InitialData:
    """f(0+) and delta^j f(0+) for j = 1..k-1."""

    f0: float
    delta_f0: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "f0", float(self.f0))
        object.__setattr__(self, "delta_f0", tuple(float(v) for v in self.delta_f0))

    @property
    def order(self) -> int:
        return 1 + len(self.delta_f0)

    def values(self):
        return (self.f0, *self.delta_f0)


def initial_data(f: FunctionSpec, n, k: int) -> InitialData:
    """Boundary values for the derivative identity of order k, from the catalog limits."""
    n = as_order(n)
    if not f.has_analytic_derivatives:
        raise ValidityError("boundary values of a black box must be supplied as InitialData")
    vals = [n**j * f.dg0(j, n) for j in range(int(k))]
    return InitialData(vals[0], tuple(vals[1:]))


def thm21_terms(F_at_y: float, n, y: float, k: int, init: InitialData) -> list[float]:
    """The k + 1 signed terms whose sum is the right-hand side."""
    n = as_order(n)
    k = int(k)
    if k < 1:
        raise ValidityError(f"k >= 1 required: k = {k}")
    if init.order != k:
        raise ValidityError(f"initial data carries {init.order} values, identity of order {k} needs {k}")
    s = n * float(y) ** n
    out = [s**k * F_at_y]
    for j, d in enumerate(init.values()):
        out.append(-(s ** (k - 1 - j)) * d)
    return out


def thm21_rhs(F_at_y: float, n, y: float, k: int, init: InitialData) -> float:
    """(n y^n)^k F - sum_{j<k} (n y^n)^{k-1-j} delta^j f(0+)."""
    return math.fsum(thm21_terms(F_at_y, n, y, k, init))


def thm21_scale(F_at_y: float, n, y: float, k: int, init: InitialData) -> float:
    """Sum of |terms|: the right-hand side carries rounding error ~eps times this."""
    return math.fsum(abs(t) for t in thm21_terms(F_at_y, n, y, k, init))


def moment_expr(pair_id: str, n, params: dict, k: int) -> E.Expr:
    """((-1)^k / n^k) delta_y^k of the catalog image, as an expression."""
    n = as_order(n)
    k = int(k)
    if k < 0:
        raise ValidityError(f"k >= 0 required: k = {k}")
    e = table.closed_form(pair_id, n, **(params or {}))
    for _ in range(k):
        e = E.delta_y(e, n)
    return E.mul((-1.0) ** k / n**k, e)


def thm22_moment(pair_id: str, n, params: dict, k: int, y: float) -> float:
    """L_n{x^{kn} f; y} from symbolic delta_y differentiation of the image."""
    n = as_order(n)
    params = params or {}
    table.make_function(pair_id, **params).validate(n, float(y))
    return moment_expr(pair_id, n, params, k)(float(y))
