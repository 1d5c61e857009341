"""A small expression grammar in one real variable y.

Closed-form transform images are built from these nodes so they can be
both evaluated and differentiated exactly. The grammar is deliberately
closed under d/dy: constants, y, sums, products, constant powers, exp, and
the scaled complementary error function together with its derivatives.

Only light simplification is performed (constant folding, dropping zero
terms and unit factors); that is enough to keep second derivatives small.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import specfun

__all__ = ["Expr", "Num", "Y", "Sum", "Product", "Pow", "Exp", "Erfcx",
           "num", "add", "mul", "power", "exp", "erfcx", "delta_y"]


class Expr:
    def evaluate(self, y):
        raise NotImplementedError

    def diff(self) -> "Expr":
        raise NotImplementedError

    def __call__(self, y):
        out = self.evaluate(np.asarray(y, dtype=float))
        return float(out) if np.ndim(out) == 0 else out

    def __add__(self, other):
        return add(self, _wrap(other))

    __radd__ = __add__

    def __mul__(self, other):
        return mul(self, _wrap(other))

    __rmul__ = __mul__

    def __neg__(self):
        return mul(Num(-1.0), self)

    def __sub__(self, other):
        return add(self, -_wrap(other))

    def __truediv__(self, other):
        return mul(self, power(_wrap(other), -1.0))

    def __pow__(self, p):
        return power(self, float(p))


def _wrap(x) -> Expr:
    return x if isinstance(x, Expr) else Num(float(x))


def _fmt(c: float) -> str:
    return f"{c:.12g}"


@dataclass(frozen=True)
class Num(Expr):
    value: float

    def evaluate(self, y):
        return np.full(np.shape(y), self.value) if np.ndim(y) else self.value

    def diff(self):
        return Num(0.0)

    def __str__(self):
        return _fmt(self.value)


@dataclass(frozen=True)
class _Var(Expr):
    def evaluate(self, y):
        return y

    def diff(self):
        return Num(1.0)

    def __str__(self):
        return "y"


Y = _Var()


@dataclass(frozen=True)
class Sum(Expr):
    terms: tuple

    def evaluate(self, y):
        out = self.terms[0].evaluate(y)
        for t in self.terms[1:]:
            out = out + t.evaluate(y)
        return out

    def diff(self):
        return add(*(t.diff() for t in self.terms))

    def __str__(self):
        return "(" + " + ".join(str(t) for t in self.terms) + ")"


@dataclass(frozen=True)
class Product(Expr):
    factors: tuple

    def evaluate(self, y):
        out = self.factors[0].evaluate(y)
        for f in self.factors[1:]:
            out = out * f.evaluate(y)
        return out

    def diff(self):
        terms = []
        for i, f in enumerate(self.factors):
            rest = self.factors[:i] + self.factors[i + 1:]
            terms.append(mul(f.diff(), *rest))
        return add(*terms)

    def __str__(self):
        return "*".join(str(f) for f in self.factors)


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: float

    def evaluate(self, y):
        return self.base.evaluate(y) ** self.exponent

    def diff(self):
        return mul(Num(self.exponent), power(self.base, self.exponent - 1.0), self.base.diff())

    def __str__(self):
        return f"{self.base}^{_fmt(self.exponent)}"


@dataclass(frozen=True)
class Exp(Expr):
    arg: Expr

    def evaluate(self, y):
        return np.exp(self.arg.evaluate(y))

    def diff(self):
        return mul(self, self.arg.diff())

    def __str__(self):
        return f"exp({self.arg})"


@dataclass(frozen=True)
class Erfcx(Expr):
    """order-th derivative of exp(z^2) erfc(z), composed with arg."""

    arg: Expr
    order: int = 0

    def evaluate(self, y):
        return specfun.erfcx_deriv(self.order, self.arg.evaluate(y))

    def diff(self):
        return mul(Erfcx(self.arg, self.order + 1), self.arg.diff())

    def __str__(self):
        name = "erfcx" + "'" * self.order
        return f"{name}({self.arg})"


def num(c: float) -> Num:
    return Num(float(c))


def _is_num(e, value=None):
    return isinstance(e, Num) and (value is None or e.value == value)


def add(*terms) -> Expr:
    flat = []
    const = 0.0
    for t in map(_wrap, terms):
        parts = t.terms if isinstance(t, Sum) else (t,)
        for p in parts:
            if isinstance(p, Num):
                const += p.value
            else:
                flat.append(p)
    if const != 0.0 or not flat:
        flat.append(Num(const))
    return flat[0] if len(flat) == 1 else Sum(tuple(flat))


def mul(*factors) -> Expr:
    flat = []
    const = 1.0
    for f in map(_wrap, factors):
        parts = f.factors if isinstance(f, Product) else (f,)
        for p in parts:
            if isinstance(p, Num):
                const *= p.value
            else:
                flat.append(p)
    if const == 0.0:
        return Num(0.0)
    if const != 1.0 or not flat:
        flat.insert(0, Num(const))
    return flat[0] if len(flat) == 1 else Product(tuple(flat))


def power(base, p: float) -> Expr:
    base = _wrap(base)
    p = float(p)
    if p == 0.0:
        return Num(1.0)
    if p == 1.0:
        return base
    if isinstance(base, Num):
        return Num(base.value**p)
    if isinstance(base, Pow):
        return power(base.base, base.exponent * p)
    return Pow(base, p)


def exp(arg) -> Expr:
    arg = _wrap(arg)
    if isinstance(arg, Num):
        return Num(math.exp(arg.value))
    return Exp(arg)


def erfcx(arg) -> Expr:
    return Erfcx(_wrap(arg), 0)


def delta_y(e: Expr, n: int) -> Expr:
    """The delta-derivative (1/y^{n-1}) d/dy applied symbolically."""
    return mul(power(Y, 1.0 - n), e.diff())
