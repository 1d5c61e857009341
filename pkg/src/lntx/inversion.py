"""Inverse transform by residues and by term-by-term series inversion.

Both routes work in the variable s = y^n. For an image F(y) = R(y^n) with R
rational and vanishing at infinity,

    f(x) = sum over poles s_k of Res[ n R(s) exp(s x^n); s_k ],

and for an image given as sum_m c_m y^{-n(m+p)} each power inverts through
the power-function pair:

    y^{-nq}  ->  n x^{n(q-1)} / Gamma(q).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import polynomial as P

from . import specfun
from .errors import InversionError

# Eigenvalues of a double root split by about sqrt(eps) relative; triple by
# eps^(1/3). Roots closer than this (relative) are treated as one pole.
CLUSTER_RTOL = 5e-5
RESIDUAL_RTOL = 1e-10
LEAKAGE_RTOL = 1e-10
SERIES_TOL = 1e-12
SERIES_MAX_TERMS = 200


def _trim(coeffs) -> np.ndarray:
    c = np.asarray(coeffs, dtype=float).ravel()
    if c.size == 0:
        raise InversionError("empty coefficient list")
    return c


@dataclass(frozen=True)
class RationalInS:
    """num(s)/den(s) with real coefficients in ascending order."""

    num: tuple
    den: tuple

    def __post_init__(self):
        num = tuple(float(c) for c in _trim(self.num))
        den = tuple(float(c) for c in _trim(self.den))
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        if den[-1] == 0.0:
            raise InversionError("leading denominator coefficient must be nonzero")
        nz = [i for i, c in enumerate(num) if c != 0.0]
        if nz and max(nz) >= len(den) - 1:
            raise InversionError("deg(num) < deg(den) required so the image vanishes at infinity")

    def __call__(self, s):
        return P.polyval(s, self.num) / P.polyval(s, self.den)

    @classmethod
    def parse(cls, text: str) -> "RationalInS":
        """Parse ``num=c0,c1,...;den=d0,d1,...``."""
        parts = {}
        for chunk in text.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            key, _, vals = chunk.partition("=")
            try:
                parts[key.strip()] = [float(v) for v in vals.split(",") if v.strip()]
            except ValueError as exc:
                raise InversionError(f"bad coefficient list in {chunk!r}") from exc
        if set(parts) != {"num", "den"}:
            raise InversionError("rational must be given as num=...;den=...")
        return cls(tuple(parts["num"]), tuple(parts["den"]))


@dataclass(frozen=True)
class Pole:
    location: complex
    multiplicity: int


def _cluster(roots, scale_floor=1.0):
    groups = []
    for r in roots:
        for g in groups:
            if any(abs(r - q) <= CLUSTER_RTOL * max(scale_floor, abs(q)) for q in g):
                g.append(r)
                break
        else:
            groups.append([r])
    return groups


def _newton(coeffs, z, steps=1):
    d = P.polyder(coeffs)
    for _ in range(steps):
        dv = P.polyval(z, d)
        if dv == 0:
            break
        z = z - P.polyval(z, coeffs) / dv
    return z


def find_poles(den_coeffs) -> list[Pole]:
    """Roots of a real polynomial (ascending coefficients) with multiplicity.

    Companion-matrix eigenvalues, clustered to detect double roots, then one
    Newton step on the polynomial (simple roots) or its derivative (double
    roots). The result is closed under conjugation.
    """
    c = _trim(den_coeffs)
    if c.size < 2:
        raise InversionError("denominator must have degree >= 1")
    if c[-1] == 0.0:
        raise InversionError("leading coefficient must be nonzero")
    monic = c / c[-1]
    deg = monic.size - 1
    comp = np.zeros((deg, deg))
    comp[1:, :-1] = np.eye(deg - 1)
    comp[:, -1] = -monic[:-1]
    try:
        eig = np.linalg.eigvals(comp)
    except np.linalg.LinAlgError as exc:
        raise InversionError("root finder did not converge") from exc

    poles = []
    for group in _cluster(list(eig)):
        mult = len(group)
        if mult > 2:
            raise InversionError(f"pole of multiplicity {mult} is not supported (max 2)")
        z = complex(np.mean(group))
        target = monic if mult == 1 else P.polyder(monic)
        z = _newton(target, z)
        poles.append((z, mult))

    # Enforce exact conjugate symmetry.
    out = []
    upper = []
    for z, m in poles:
        if abs(z.imag) <= 1e-10 * max(1.0, abs(z)):
            out.append(Pole(complex(z.real, 0.0), m))
        elif z.imag > 0:
            upper.append((z, m))
    lower = sum(1 for z, m in poles if z.imag < 0 and abs(z.imag) > 1e-10 * max(1.0, abs(z)))
    if lower != len(upper):
        raise InversionError("complex roots do not pair into conjugates")
    for z, m in upper:
        out.append(Pole(z, m))
        out.append(Pole(z.conjugate(), m))

    scale = np.abs(monic)
    for p in out:
        # multiplicity-2 roots are only determined to ~sqrt(eps)
        resid = abs(P.polyval(p.location, monic))
        bound = np.dot(scale, np.abs(p.location) ** np.arange(monic.size))
        tol = RESIDUAL_RTOL if p.multiplicity == 1 else math.sqrt(RESIDUAL_RTOL)
        if resid > tol * bound:
            raise InversionError(f"root finder did not converge at s = {p.location}")
    out.sort(key=lambda p: (p.location.real, p.location.imag))
    return out


class RationalInverse:
    """f(x) = sum_k (A_k + B_k x^n) exp(s_k x^n), precomputed from the poles."""

    def __init__(self, rational: RationalInS, n: int, abscissa: float | None = None):
        self.rational = rational
        self.n = int(n)
        self.poles = find_poles(rational.den)
        if abscissa is not None:
            bad = [p for p in self.poles if p.location.real >= abscissa]
            if bad:
                raise InversionError(
                    f"pole at s = {bad[0].location} lies on or right of the contour line Re s = {abscissa}")
        num = np.asarray(rational.num)
        den = np.asarray(rational.den)
        dnum = P.polyder(num) if num.size > 1 else np.zeros(1)
        d1 = P.polyder(den)
        d2 = P.polyder(den, 2) if den.size > 2 else np.zeros(1)
        d3 = P.polyder(den, 3) if den.size > 3 else np.zeros(1)
        n_ = self.n
        A, B, S = [], [], []
        for p in self.poles:
            s = p.location
            if p.multiplicity == 1:
                A.append(n_ * P.polyval(s, num) / P.polyval(s, d1))
                B.append(0.0)
            else:
                # den = (s - s_k)^2 q  =>  q(s_k) = den''/2, q'(s_k) = den'''/6
                q0 = P.polyval(s, d2) / 2.0
                q1 = P.polyval(s, d3) / 6.0
                phi = P.polyval(s, num) / q0
                dphi = (P.polyval(s, dnum) * q0 - P.polyval(s, num) * q1) / (q0 * q0)
                A.append(n_ * dphi)
                B.append(n_ * phi)
            S.append(s)
        self._A = np.array(A, dtype=complex)
        self._B = np.array(B, dtype=complex)
        self._S = np.array(S, dtype=complex)

    @property
    def max_real_pole(self) -> float:
        return float(self._S.real.max())

    def residue_terms(self, x):
        """Complex residue contributions, shape (len(x), n_poles)."""
        w = np.atleast_1d(np.asarray(x, dtype=float)) ** self.n
        w = w[:, None]
        with np.errstate(over="ignore", invalid="ignore"):
            return (self._A + self._B * w) * np.exp(self._S * w)

    def leakage(self, x):
        """|Im sum| relative to the magnitude of the individual residues."""
        terms = self.residue_terms(x)
        total = terms.sum(axis=1)
        scale = np.maximum(np.abs(terms).sum(axis=1), np.abs(total.real))
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.where(scale > 0, np.abs(total.imag) / scale, 0.0)

    def __call__(self, x):
        xa = np.asarray(x, dtype=float)
        if (xa < 0).any():
            raise InversionError("inverse is defined for x >= 0")
        terms = self.residue_terms(xa)
        total = terms.sum(axis=1)
        scale = np.abs(terms).sum(axis=1)
        if (np.abs(total.imag) > LEAKAGE_RTOL * np.maximum(scale, np.abs(total.real))).any():
            raise InversionError("imaginary parts of conjugate residues failed to cancel")
        out = total.real.reshape(xa.shape)
        return float(out) if out.ndim == 0 else out


def invert_rational(rational: RationalInS, n: int, x, abscissa: float | None = None):
    """Inverse transform of R(y^n) at x by summing residues of n R(s) e^{s x^n}."""
    return RationalInverse(rational, n, abscissa)(x)


@dataclass(frozen=True)
class PowerSeriesInvS:
    """sum_m c_m y^{-n(m+p)}; ``coeffs`` is a finite sequence or a callable m -> c_m."""

    coeffs: Sequence[float] | Callable[[int], float]
    offset: float

    def __post_init__(self):
        if not self.offset > 0:
            raise InversionError("series offset p must be positive")

    @property
    def length(self):
        return None if callable(self.coeffs) else len(self.coeffs)

    def coefficient(self, m: int) -> float:
        if callable(self.coeffs):
            return float(self.coeffs(m))
        return float(self.coeffs[m]) if m < len(self.coeffs) else 0.0

    def __call__(self, y, n: int, terms: int = 60):
        """Partial sum of the image itself (for moderate 1/y^n)."""
        y = np.asarray(y, dtype=float)
        count = terms if self.length is None else self.length
        return sum(self.coefficient(m) * y ** (-n * (m + self.offset)) for m in range(count))


def inverse_term_coefficients(series: PowerSeriesInvS, n: int, terms: int):
    """(exponent of x, coefficient) for the first ``terms`` inverted terms."""
    out = []
    for m in range(terms):
        q = m + series.offset
        out.append((n * (q - 1.0), series.coefficient(m) * n / specfun.gamma(q)))
    return out


def invert_series(series: PowerSeriesInvS, n: int, x, tol: float = SERIES_TOL,
                  max_terms: int = SERIES_MAX_TERMS):
    """Term-by-term inverse sum_m c_m n x^{n(m+p-1)} / Gamma(m+p)."""
    xa = np.asarray(x, dtype=float)
    if (xa < 0).any():
        raise InversionError("inverse is defined for x >= 0")
    w = np.atleast_1d(xa).ravel() ** n
    pos = w > 0
    logw = np.log(np.where(pos, w, 1.0))
    total = np.zeros_like(w)
    quiet = 0
    limit = max_terms if series.length is None else min(series.length, max_terms)
    converged = series.length is not None and series.length <= max_terms
    for m in range(limit):
        c = series.coefficient(m)
        q = m + series.offset
        if c == 0.0:
            term = np.zeros_like(w)
        else:
            mag = np.exp((q - 1.0) * logw - specfun.loggamma(q))
            if q == 1.0:
                at_zero = 1.0
            elif q > 1.0:
                at_zero = 0.0
            else:
                at_zero = np.inf
            term = c * n * np.where(pos, mag, at_zero)
        total = total + term
        if series.length is None:
            small = np.abs(term) <= tol * np.maximum(np.abs(total), 1e-300)
            quiet = quiet + 1 if small.all() else 0
            if quiet >= 3:
                converged = True
                break
    if not converged:
        raise InversionError(f"series tail bound not met within {max_terms} terms")
    out = total.reshape(xa.shape)
    return float(out) if out.ndim == 0 else out
