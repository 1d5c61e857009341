"""Numeric forward transform

    L_n{f; y} = int_0^inf x^{n-1} exp(-x^n y^n) f(x) dx,   n = 2^k.

Two independent quadrature routes are offered. ``forward_numeric`` substitutes
u = x^n y^n, giving (1/(n y^n)) int e^{-u} g(u / y^n) du with f(x) = g(x^n),
and integrates against the unit exponential weight. ``forward_via_laplace``
substitutes t = x^n instead, giving (1/n) times the Laplace transform of
g(t) at s = y^n, and integrates e^{-s t} g(t) with a different rule on a
different mesh.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import ClassVar

import numpy as np

from . import quadrature
from .errors import DomainError, QuadratureError, ValidityError
from .functions import BlackBox, FunctionSpec

QUAD_ORDER_ENV = "LNTX_QUAD_ORDER"


@dataclass(frozen=True)
class Order:
    """Transform order n, an exact power of two (n = 1 is the Laplace case)."""

    n: int

    def __post_init__(self):
        n = self.n
        if isinstance(n, float) and n.is_integer():
            n = int(n)
            object.__setattr__(self, "n", n)
        if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1 or n & (n - 1):
            raise ValidityError(f"n = 2^k violated: n = {self.n}")

    @property
    def k(self) -> int:
        return int(self.n).bit_length() - 1

    def __int__(self):
        return int(self.n)


def as_order(n) -> int:
    return int(n.n) if isinstance(n, Order) else Order(n).n


@dataclass(frozen=True)
class TransformQuery:
    f: FunctionSpec
    n: int
    y: float

    def __post_init__(self):
        object.__setattr__(self, "n", as_order(self.n))
        y = float(self.y)
        if math.isnan(y):
            raise DomainError("y is NaN")
        object.__setattr__(self, "y", y)
        self.f.validate(self.n, y)


def default_quad_order() -> int:
    raw = os.environ.get(QUAD_ORDER_ENV)
    if raw is None:
        return quadrature.DEFAULT_ORDER
    try:
        return int(raw)
    except ValueError as exc:
        raise QuadratureError(f"{QUAD_ORDER_ENV} must be an integer, got {raw!r}") from exc


def _decay(f: FunctionSpec, n: int, y: float) -> float:
    alpha = float(getattr(f, "growth_alpha", 0.0) or 0.0)
    return 1.0 - (alpha / y) ** n if alpha > 0 else 1.0


def forward_numeric(f: FunctionSpec, n, y: float, quad_order: int | None = None) -> float:
    """L_n{f; y} by quadrature in u = x^n y^n."""
    q = TransformQuery(f, n, y)
    n, y = q.n, q.y
    order = default_quad_order() if quad_order is None else int(quad_order)
    s = y**n

    def h(u):
        return f.g(u / s, n)

    val = quadrature.integrate_exp_weighted(h, order=order, decay=_decay(f, n, y))
    return val / (n * s)


def forward_via_laplace(f: FunctionSpec, n, y: float) -> float:
    """L_n{f; y} as (1/n) L{f(t^{1/n}); y^n}, by an adaptive rule in t."""
    q = TransformQuery(f, n, y)
    n, y = q.n, q.y
    s = y**n

    def h(t):
        return f.g(t, n)

    return quadrature.adaptive_exp_weighted(h, rate=s, decay=_decay(f, n, y), rule=20) / n


@dataclass(frozen=True)
class Damped(FunctionSpec):
    """exp(-a x^n) f(x)."""

    base: FunctionSpec = None
    a: float = 0.0
    family: ClassVar[str] = "damped"

    def params(self):
        return {"a": self.a, **self.base.params()}

    @property
    def growth_alpha(self):
        return self.base.growth_alpha

    def validate(self, n, y=None):
        self.base.validate(n, None if y is None else shifted_abscissa(y, self.a, n))

    def g(self, w, n):
        w = np.asarray(w, dtype=float)
        return np.exp(-self.a * w) * self.base.g(w, n)

    def __str__(self):
        return f"exp(-{self.a:g} x^n) * {self.base}"


@dataclass(frozen=True)
class Moment(FunctionSpec):
    """x^{kn} f(x)."""

    base: FunctionSpec = None
    k: int = 0
    family: ClassVar[str] = "moment"

    @property
    def growth_alpha(self):
        return self.base.growth_alpha

    def validate(self, n, y=None):
        self.base.validate(n, y)

    def g(self, w, n):
        w = np.asarray(w, dtype=float)
        return w**self.k * self.base.g(w, n)


@dataclass(frozen=True)
class Combination(FunctionSpec):
    """sum_i c_i f_i(x)."""

    terms: tuple = ()
    family: ClassVar[str] = "combination"

    @property
    def growth_alpha(self):
        return max(f.growth_alpha for _, f in self.terms)

    def validate(self, n, y=None):
        for _, f in self.terms:
            f.validate(n, y)

    def g(self, w, n):
        w = np.asarray(w, dtype=float)
        out = np.zeros_like(w)
        for c, f in self.terms:
            out = out + c * f.g(w, n)
        return out


def shifted_abscissa(y: float, a: float, n: int) -> float:
    return (y**n + a) ** (1.0 / n)


def shift_rule(f: FunctionSpec, a: float, n, y: float, closed_form=None) -> float:
    """L_n{exp(-a x^n) f(x); y} = L_n{f; (y^n + a)^{1/n}}.

    ``closed_form`` maps (f, n, y') to the image of f; without it the
    right-hand side is evaluated by quadrature.
    """
    n = as_order(n)
    if not a >= 0:
        raise ValidityError(f"shift a >= 0 required: a = {a}")
    if not y > 0:
        raise ValidityError(f"Re(y)>0 violated: y = {y}")
    ys = shifted_abscissa(y, a, n)
    f.validate(n, ys)
    if closed_form is None:
        return forward_numeric(f, n, ys)
    return closed_form(f, n, ys)


def blackbox(fn, growth_alpha: float = 0.0, name: str = "blackbox") -> BlackBox:
    return BlackBox(evaluator=fn, growth_alpha=growth_alpha, name=name)
