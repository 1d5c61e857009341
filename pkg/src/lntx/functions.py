"""Input functions for the transform.

Every catalog family is a function of w = x^n, f(x) = g(x^n). That is what
makes the transform tractable: after the substitution u = x^n y^n the
integrand only needs g(u / y^n), and the delta-derivative
(1/x^{n-1}) d/dx becomes n d/dw, so

    delta_x^j f(x) = n^j g^{(j)}(x^n).

Each family therefore implements ``g`` and its w-derivatives ``dg`` in closed
form, plus the one-sided limits ``dg0`` at w = 0+ that the transform of a
derivative needs as boundary data. ``BlackBox`` wraps an arbitrary callable
of x and has neither.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, ClassVar

import numpy as np
from numpy.polynomial import Polynomial

from . import specfun
from .errors import DomainError, ValidityError

_INV_SQRT_PI = 1.0 / math.sqrt(math.pi)


def _falling(p: float, j: int) -> float:
    out = 1.0
    for i in range(j):
        out *= p - i
    return out


def _check_y(y: float) -> None:
    if not y > 0:
        raise ValidityError(f"Re(y)>0 violated: y = {y}")


class FunctionSpec:
    """Base class for the input-function families."""

    family: ClassVar[str] = ""
    growth_alpha: float = 0.0

    def params(self) -> dict:
        return {}

    def validate(self, n: int, y: float | None = None) -> None:
        """Raise ``ValidityError`` naming the violated condition, if any."""
        if y is not None:
            _check_y(y)

    def g(self, w, n: int):
        raise NotImplementedError

    def dg(self, j: int, w, n: int):
        """j-th derivative of g with respect to w."""
        raise NotImplementedError

    def dg0(self, j: int, n: int) -> float:
        """Limit of the j-th w-derivative of g as w -> 0+."""
        raise NotImplementedError

    def evaluate(self, x, n: int):
        x = np.asarray(x, dtype=float)
        out = self.g(x**n, n)
        return float(out) if np.ndim(out) == 0 else out

    @property
    def has_analytic_derivatives(self) -> bool:
        return True

    def __str__(self) -> str:
        inner = ", ".join(f"{k}={v:g}" for k, v in self.params().items())
        return f"{type(self).__name__}({inner})"


@dataclass(frozen=True)
class Const(FunctionSpec):
    family: ClassVar[str] = "const"

    def g(self, w, n):
        return np.ones_like(np.asarray(w, dtype=float))

    def dg(self, j, w, n):
        w = np.asarray(w, dtype=float)
        return np.ones_like(w) if j == 0 else np.zeros_like(w)

    def dg0(self, j, n):
        return 1.0 if j == 0 else 0.0


@dataclass(frozen=True)
class Power(FunctionSpec):
    """f(x) = x^k for real k > -n."""

    k: float = 0.0
    family: ClassVar[str] = "power"

    def params(self):
        return {"k": self.k}

    def validate(self, n, y=None):
        if not self.k > -n:
            raise ValidityError(f"k > -n violated: k = {self.k}, n = {n}")
        super().validate(n, y)

    def g(self, w, n):
        return np.asarray(w, dtype=float) ** (self.k / n)

    def evaluate(self, x, n):
        out = np.asarray(x, dtype=float) ** self.k
        return float(out) if np.ndim(out) == 0 else out

    def dg(self, j, w, n):
        p = self.k / n
        c = _falling(p, j)
        w = np.asarray(w, dtype=float)
        if c == 0.0:
            return np.zeros_like(w)
        return c * w ** (p - j)

    def dg0(self, j, n):
        p = self.k / n
        c = _falling(p, j)
        if c == 0.0 or p > j:
            return 0.0
        if p == j:
            return c
        raise DomainError(f"delta^{j} x^{self.k} is unbounded at x = 0+")


@dataclass(frozen=True)
class CosXn(FunctionSpec):
    """f(x) = cos(a x^n)."""

    a: float = 1.0
    family: ClassVar[str] = "cos_axn"

    def params(self):
        return {"a": self.a}

    def g(self, w, n):
        return np.cos(self.a * np.asarray(w, dtype=float))

    def dg(self, j, w, n):
        return self.a**j * np.cos(self.a * np.asarray(w, dtype=float) + 0.5 * j * math.pi)

    def dg0(self, j, n):
        return self.a**j * (1.0, 0.0, -1.0, 0.0)[j % 4]


@dataclass(frozen=True)
class SinXn(FunctionSpec):
    """f(x) = sin(a x^n)."""

    a: float = 1.0
    family: ClassVar[str] = "sin_axn"

    def params(self):
        return {"a": self.a}

    def g(self, w, n):
        return np.sin(self.a * np.asarray(w, dtype=float))

    def dg(self, j, w, n):
        return self.a**j * np.sin(self.a * np.asarray(w, dtype=float) + 0.5 * j * math.pi)

    def dg0(self, j, n):
        return self.a**j * (0.0, 1.0, 0.0, -1.0)[j % 4]


@dataclass(frozen=True)
class ExpNegAXn(FunctionSpec):
    """f(x) = exp(-a^n x^n), a > 0.

    The integral converges whenever y^n + a^n > 0, so for real a > 0 every
    y > 0 is admitted; a < y is sufficient but not needed.
    """

    a: float = 1.0
    family: ClassVar[str] = "exp_neg_axn"

    def params(self):
        return {"a": self.a}

    def validate(self, n, y=None):
        if not self.a > 0:
            raise ValidityError(f"Re(a) > 0 violated: a = {self.a}")
        super().validate(n, y)

    def g(self, w, n):
        return np.exp(-(self.a**n) * np.asarray(w, dtype=float))

    def dg(self, j, w, n):
        b = self.a**n
        return (-b) ** j * np.exp(-b * np.asarray(w, dtype=float))

    def dg0(self, j, n):
        return (-(self.a**n)) ** j


@dataclass(frozen=True)
class BesselJvArg(FunctionSpec):
    """f(x) = x^{nv/2} J_v(2 a^{n/2} x^{n/2}), a > 0, v > -1."""

    a: float = 1.0
    v: float = 0.0
    family: ClassVar[str] = "bessel_jv"

    def params(self):
        return {"a": self.a, "v": self.v}

    def validate(self, n, y=None):
        if not self.a > 0:
            raise ValidityError(f"Re(a) > 0 violated: a = {self.a}")
        if not self.v > -1:
            raise ValidityError(f"Re(v) > -1 violated: v = {self.v}")
        if self.v < 0:
            raise DomainError("negative Bessel order is outside the real-order kernel")
        super().validate(n, y)

    def g(self, w, n):
        w = np.asarray(w, dtype=float)
        b = self.a**n
        return w ** (0.5 * self.v) * specfun.bessel_j(self.v, 2.0 * np.sqrt(b * w))

    def dg(self, j, w, n):
        # d^j/dw^j [w^{v/2} J_v(2 sqrt(bw))] = b^{j/2} w^{(v-j)/2} J_{v-j}(2 sqrt(bw))
        w = np.asarray(w, dtype=float)
        b = self.a**n
        order = self.v - j
        arg = 2.0 * np.sqrt(b * w)
        jv = specfun.bessel_j_real(order, arg)
        return b ** (0.5 * j) * w ** (0.5 * order) * jv

    def dg0(self, j, n):
        b = self.a**n
        v = self.v
        if v == math.floor(v):
            p = int(v)
            if j < p:
                return 0.0
            return b ** (0.5 * p) * (-b) ** (j - p) / math.factorial(j - p)
        if j < v:
            return 0.0
        raise DomainError(f"delta^{j} of the order-{v} Bessel family is unbounded at 0+")


@dataclass(frozen=True)
class BesselJ0Arg(BesselJvArg):
    """f(x) = J_0(2 a^{n/2} x^{n/2})."""

    a: float = 1.0
    v: float = field(default=0.0, init=False)
    family: ClassVar[str] = "bessel_j0"

    def params(self):
        return {"a": self.a}


@dataclass(frozen=True)
class ErfcInvArg(FunctionSpec):
    """f(x) = erfc(a^{n/2} / (2 x^{n/2})), a > 0."""

    a: float = 1.0
    family: ClassVar[str] = "erfc_inv"

    def params(self):
        return {"a": self.a}

    def validate(self, n, y=None):
        if not self.a > 0:
            raise ValidityError(f"Re(a) > 0 violated: a = {self.a}")
        super().validate(n, y)

    def _c(self, n):
        return 0.5 * self.a ** (0.5 * n)

    def g(self, w, n):
        w = np.asarray(w, dtype=float)
        c = self._c(n)
        with np.errstate(divide="ignore"):
            arg = np.where(w > 0, c / np.sqrt(np.where(w > 0, w, 1.0)), np.inf)
        out = np.zeros_like(w)
        pos = w > 0
        out[pos] = specfun.erfc(arg[pos])
        return out

    def dg(self, j, w, n):
        w = np.asarray(w, dtype=float)
        if j == 0:
            return self.g(w, n)
        # g' = (c/sqrt(pi)) w^{-3/2} E(w), E = exp(-c^2/w), E^{(i)} = E P_i(1/w).
        c = self._c(n)
        t = 1.0 / w
        e = np.exp(-c * c * t)
        polys = [Polynomial([1.0])]
        for _ in range(j - 1):
            p = polys[-1]
            polys.append(Polynomial([0, 0, 1]) * (c * c * p - p.deriv()))
        total = np.zeros_like(w)
        m = j - 1
        for i in range(j):
            power_part = _falling(-1.5, m - i) * w ** (-1.5 - (m - i))
            total = total + math.comb(m, i) * power_part * polys[i](t)
        return c * _INV_SQRT_PI * total * e

    def dg0(self, j, n):
        return 0.0


@dataclass(frozen=True)
class ErfArg(FunctionSpec):
    """f(x) = erf(a^{n/2} x^{n/2}), a > 0."""

    a: float = 1.0
    family: ClassVar[str] = "erf"

    def params(self):
        return {"a": self.a}

    def validate(self, n, y=None):
        if y is not None:
            _check_y(y)
            if not -self.a < y:
                raise ValidityError(f"-Re(a) < y violated: a = {self.a}, y = {y}")
        if not self.a > 0:
            raise ValidityError(f"a > 0 required for a real a^(n/2): a = {self.a}")

    def g(self, w, n):
        return specfun.erf(np.sqrt((self.a**n) * np.asarray(w, dtype=float)))

    def dg(self, j, w, n):
        w = np.asarray(w, dtype=float)
        if j == 0:
            return self.g(w, n)
        c2 = self.a**n
        c = math.sqrt(c2)
        m = j - 1
        total = np.zeros_like(w)
        for i in range(j):
            total = total + math.comb(m, i) * _falling(-0.5, m - i) * w ** (-0.5 - (m - i)) * (-c2) ** i
        return c * _INV_SQRT_PI * total * np.exp(-c2 * w)

    def dg0(self, j, n):
        if j == 0:
            return 0.0
        raise DomainError(f"delta^{j} erf(a^(n/2) x^(n/2)) is unbounded at x = 0+")


@dataclass(frozen=True)
class GaussXn2(FunctionSpec):
    """f(x) = exp(-a x^{2n}), a > 0."""

    a: float = 1.0
    family: ClassVar[str] = "gauss_x2n"

    def params(self):
        return {"a": self.a}

    def validate(self, n, y=None):
        if not self.a > 0:
            raise ValidityError(f"Re(a) > 0 violated: a = {self.a}")
        super().validate(n, y)

    def g(self, w, n):
        w = np.asarray(w, dtype=float)
        return np.exp(-self.a * w * w)

    def dg(self, j, w, n):
        # d^j/dw^j exp(-a w^2) = (-sqrt a)^j H_j(sqrt(a) w) exp(-a w^2), physicists' Hermite.
        w = np.asarray(w, dtype=float)
        s = math.sqrt(self.a)
        t = s * w
        h_prev, h = np.zeros_like(t), np.ones_like(t)
        for i in range(j):
            h_prev, h = h, 2 * t * h - 2 * i * h_prev
        return (-s) ** j * h * np.exp(-t * t)

    def dg0(self, j, n):
        if j % 2:
            return 0.0
        half = j // 2
        return (-self.a) ** half * math.factorial(j) / math.factorial(half)


@dataclass(frozen=True)
class BlackBox(FunctionSpec):
    """Arbitrary vectorised callable of x with declared exponential order.

    ``growth_alpha`` is the constant in |f(x)| <= M exp(alpha^n x^n); the
    transform then exists for y > alpha.
    """

    evaluator: Callable = None
    growth_alpha: float = 0.0
    name: str = "blackbox"
    family: ClassVar[str] = "blackbox"

    def params(self):
        return {"growth_alpha": self.growth_alpha}

    def validate(self, n, y=None):
        if self.evaluator is None:
            raise ValidityError("BlackBox needs an evaluator")
        if self.growth_alpha < 0:
            raise ValidityError("growth_alpha must be >= 0")
        if y is not None:
            _check_y(y)
            if not y > self.growth_alpha:
                raise ValidityError(
                    f"y > alpha violated for exponential order exp(alpha^n x^n): "
                    f"y = {y}, alpha = {self.growth_alpha}")

    @property
    def has_analytic_derivatives(self):
        return False

    def evaluate(self, x, n):
        x = np.asarray(x, dtype=float)
        out = np.asarray(self.evaluator(x), dtype=float)
        if out.shape != x.shape:
            out = np.broadcast_to(out, x.shape).copy()
        return float(out) if np.ndim(out) == 0 else out

    def g(self, w, n):
        return self.evaluate(np.asarray(w, dtype=float) ** (1.0 / n), n)

    def __str__(self):
        return f"BlackBox({self.name})"


FAMILIES = {
    cls.family: cls
    for cls in (Const, Power, CosXn, SinXn, ExpNegAXn, BesselJ0Arg, BesselJvArg,
                ErfcInvArg, ErfArg, GaussXn2)
}
