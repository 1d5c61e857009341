"""Special functions on the real line: Gamma, Bessel J, erf and relatives.

Everything here is written from scratch so that the closed forms of the
transform catalog can be checked against quadrature without borrowing a
third-party special-function library on either side of the comparison.

All public functions accept a float or a numpy array and return the same
shape. NaN is rejected at every entry point.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

__all__ = [
    "gamma",
    "loggamma",
    "rgamma",
    "bessel_j",
    "bessel_j_int",
    "bessel_j_real",
    "erf",
    "erfc",
    "erfcx",
    "erfcx_deriv",
]

SQRT_PI = math.sqrt(math.pi)
_TWO_OVER_SQRT_PI = 2.0 / SQRT_PI

# Lanczos approximation, g = 7, nine terms.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

# Gamma(m) for m = 1..171, exact up to float rounding.
_FACTORIAL = np.array([float(math.factorial(m - 1)) for m in range(1, 172)])

# Beyond this argument the Bessel power series loses more than ~1e-14 to
# cancellation; Miller's backward recurrence takes over.
_BESSEL_SERIES_MAX = 8.0
# erf uses its series below this |x| and the erfc continued fraction above.
_ERF_SERIES_MAX = 3.0
# erfc/erfcx switch to the continued fraction earlier to keep relative accuracy.
_ERFC_CF_MIN = 1.0
_ERFC_CF_DEPTH = 160
# erfcx derivatives: forward recurrence up to here, backward continued
# fraction (converging slowly near 0, hence the depth) above.
_ERFCX_FORWARD_MAX = 0.5
_ERFCX_CF_DEPTH = 1500


def _as_array(x, name="x"):
    arr = np.asarray(x, dtype=float)
    if np.isnan(arr).any():
        raise DomainError(f"{name} is NaN")
    return arr


def _out(arr, like):
    if np.ndim(like) == 0:
        return float(arr)
    return arr


def _is_nonpositive_integer(z):
    return (z <= 0) & (z == np.floor(z))


def _loggamma_ge1(z):
    """log Gamma(z) for z >= 1 via the Lanczos sum."""
    zm = z - 1.0
    acc = np.full_like(zm, _LANCZOS[0])
    for i, c in enumerate(_LANCZOS[1:], start=1):
        acc = acc + c / (zm + i)
    t = zm + _LANCZOS_G + 0.5
    return 0.5 * math.log(2 * math.pi) + (zm + 0.5) * np.log(t) - t + np.log(acc)


def loggamma(z):
    """Natural log of Gamma(z) for z > 0."""
    zz = _as_array(z, "z")
    if (zz <= 0).any():
        raise DomainError("loggamma requires z > 0")
    small = zz < 1.0
    shifted = np.where(small, zz + 1.0, zz)
    out = _loggamma_ge1(shifted)
    out = np.where(small, out - np.log(np.where(small, zz, 1.0)), out)
    return _out(out, z)


def gamma(z):
    """Gamma function on the real line.

    Positive arguments go through the log-Gamma approximation (small ones
    shifted up by one with the recurrence); negative non-integers use the
    reflection formula. Non-positive integers are poles and raise
    ``DomainError``.
    """
    zz = _as_array(z, "z")
    if _is_nonpositive_integer(zz).any():
        raise DomainError("gamma has a pole at non-positive integers")
    pos = zz > 0
    out = np.empty_like(zz)
    if pos.any():
        zp = zz[pos]
        val = np.exp(loggamma(zp))
        whole = (zp == np.floor(zp)) & (zp <= 171)
        if whole.any():
            val[whole] = _FACTORIAL[zp[whole].astype(int) - 1]
        out[pos] = val
    neg = ~pos
    if neg.any():
        zn = zz[neg]
        out[neg] = math.pi / (np.sin(math.pi * zn) * np.exp(loggamma(1.0 - zn)))
    return _out(out, z)


def rgamma(z):
    """Reciprocal Gamma function; zero at the poles of Gamma."""
    zz = _as_array(z, "z")
    poles = _is_nonpositive_integer(zz)
    out = np.zeros_like(zz)
    ok = ~poles
    if ok.any():
        out[ok] = 1.0 / gamma(zz[ok])
    return _out(out, z)


def _bessel_series(nu, x):
    half = 0.5 * x
    term = half**nu / gamma(nu + 1.0)
    total = term.copy()
    q = -half * half
    for m in range(1, 400):
        term = term * q / (m * (m + nu))
        total = total + term
        if m > half.max() and (np.abs(term) <= 1e-17 * np.abs(total)).all():
            break
    return total


def _bessel_miller(nu, x):
    # Start order well past the turning point so J_{nu+M}(x) is negligible.
    big = int(x.max())
    top = 2 * ((big + 30 + int(6 * big ** (1.0 / 3.0))) // 2 + 1)
    f_next = np.zeros_like(x)
    f_cur = np.full_like(x, 1e-30)
    norm = np.zeros_like(x)
    # h_k = Gamma(nu + k) / (k! Gamma(nu + 1)), needed at even offsets 2k.
    h = [0.0, 1.0]
    for k in range(1, top // 2 + 1):
        h.append(h[-1] * (nu + k) / (k + 1))
    for j in range(top, 0, -1):
        if j % 2 == 0:
            k = j // 2
            norm = norm + (nu + 2 * k) * h[k] * f_cur
        f_prev = (2.0 * (nu + j) / x) * f_cur - f_next
        f_next, f_cur = f_cur, f_prev
        big_mask = np.abs(f_cur) > 1e200
        if big_mask.any():
            scale = np.where(big_mask, 1e-200, 1.0)
            f_cur = f_cur * scale
            f_next = f_next * scale
            norm = norm * scale
    norm = norm + f_cur
    return f_cur / norm * (0.5 * x) ** nu / gamma(nu + 1.0)


def bessel_j(order, x):
    """Bessel function of the first kind J_order(x) for order >= 0, x >= 0.

    The defining power series is summed for x <= 8. Above that the series
    cancels badly, so Miller's backward recurrence is used, normalised with
    the Neumann sum  sum_k (order+2k) Gamma(order+k)/k! J_{order+2k}(x) = (x/2)^order.
    """
    nu = float(order)
    if math.isnan(nu) or nu < 0:
        raise DomainError("bessel_j requires order >= 0")
    xx = _as_array(x)
    if (xx < 0).any():
        raise DomainError("bessel_j requires x >= 0")
    flat = np.atleast_1d(xx).ravel()
    out = np.empty_like(flat)
    small = flat <= _BESSEL_SERIES_MAX
    if small.any():
        out[small] = _bessel_series(nu, flat[small])
    if (~small).any():
        out[~small] = _bessel_miller(nu, flat[~small])
    return _out(out.reshape(np.shape(xx)), x)


def bessel_j_int(m, x):
    """J_m(x) for any integer m, using J_{-m} = (-1)^m J_m."""
    m = int(m)
    if m >= 0:
        return bessel_j(m, x)
    sign = -1.0 if m % 2 else 1.0
    return sign * bessel_j(-m, x)


def bessel_j_real(order, x):
    """J_order(x) for any real order, x > 0 when the order is negative.

    Negative non-integer orders use the power series for x <= 8 and, above
    that, downward recurrence J_{nu-1} = (2 nu / x) J_nu - J_{nu+1} started
    from the fractional order, which is stable while |nu| stays below x.
    """
    nu = float(order)
    if math.isnan(nu):
        raise DomainError("order is NaN")
    if nu >= 0:
        return bessel_j(nu, x)
    if nu == math.floor(nu):
        return bessel_j_int(int(nu), x)
    xx = _as_array(x)
    if (xx <= 0).any():
        raise DomainError("negative non-integer order needs x > 0")
    flat = np.atleast_1d(xx).ravel()
    out = np.empty_like(flat)
    small = flat <= _BESSEL_SERIES_MAX
    if small.any():
        out[small] = _bessel_series(nu, flat[small])
    if (~small).any():
        xb = flat[~small]
        base = nu - math.floor(nu)
        upper = _bessel_miller(base + 1.0, xb)
        cur = _bessel_miller(base, xb)
        mu = base
        while mu > nu + 0.5:
            upper, cur = cur, (2.0 * mu / xb) * cur - upper
            mu -= 1.0
        out[~small] = cur
    return _out(out.reshape(np.shape(xx)), x)


def _erf_series(x):
    # erf(x) = 2/sqrt(pi) exp(-x^2) sum_k 2^k x^(2k+1) / (1*3*...*(2k+1)); all terms positive.
    x2 = 2.0 * x * x
    term = x.copy()
    total = term.copy()
    for k in range(1, 200):
        term = term * x2 / (2 * k + 1)
        total = total + term
        if (np.abs(term) <= 1e-17 * np.abs(total)).all():
            break
    return _TWO_OVER_SQRT_PI * np.exp(-x * x) * total


def _erfcx_cf(x):
    # erfc(x) exp(x^2) = 1/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))), x > 0.
    t = x.copy()
    for k in range(_ERFC_CF_DEPTH, 0, -1):
        t = x + (0.5 * k) / t
    return 1.0 / (SQRT_PI * t)


def erf(x):
    """Error function."""
    xx = _as_array(x)
    ax = np.abs(xx)
    out = np.empty_like(ax)
    small = ax <= _ERF_SERIES_MAX
    if small.any():
        out[small] = _erf_series(ax[small])
    if (~small).any():
        big = ax[~small]
        out[~small] = 1.0 - _erfcx_cf(big) * np.exp(-big * big)
    return _out(np.sign(xx) * out, x)


def erfcx(x):
    """Scaled complementary error function exp(x^2) erfc(x)."""
    xx = _as_array(x)
    out = np.empty_like(xx)
    big = xx > _ERFC_CF_MIN
    if big.any():
        out[big] = _erfcx_cf(xx[big])
    rest = ~big
    if rest.any():
        xr = xx[rest]
        out[rest] = np.exp(xr * xr) * (1.0 - np.asarray(erf(xr)))
    return _out(out, x)


def erfc(x):
    """Complementary error function, accurate in the far right tail."""
    xx = _as_array(x)
    out = np.empty_like(xx)
    big = np.abs(xx) > _ERFC_CF_MIN
    if big.any():
        xb = xx[big]
        tail = _erfcx_cf(np.abs(xb)) * np.exp(-xb * xb)
        out[big] = np.where(xb > 0, tail, 2.0 - tail)
    rest = ~big
    if rest.any():
        out[rest] = 1.0 - erf(xx[rest])
    return _out(out, x)


def erfcx_deriv(order, x):
    """d^order/dx^order of erfcx(x).

    The derivatives obey F_{j+1} = 2x F_j + 2j F_{j-1} with
    F_1 = 2x F_0 - 2/sqrt(pi). Forward recurrence cancels for large x, so
    for x > 0.5 the ratios F_j/F_{j-1} come from the backward continued
    fraction of the minimal solution instead.
    """
    order = int(order)
    if order < 0:
        raise DomainError("derivative order must be >= 0")
    xx = _as_array(x)
    f0 = np.asarray(erfcx(xx), dtype=float)
    if order == 0:
        return _out(f0, x)
    flat = np.atleast_1d(xx).ravel()
    f0f = np.atleast_1d(f0).ravel()
    out = np.empty_like(flat)

    fwd = flat <= _ERFCX_FORWARD_MAX
    if fwd.any():
        z = flat[fwd]
        prev, cur = f0f[fwd], 2.0 * z * f0f[fwd] - _TWO_OVER_SQRT_PI
        for j in range(1, order):
            prev, cur = cur, 2.0 * z * cur + 2.0 * j * prev
        out[fwd] = cur
    bwd = ~fwd
    if bwd.any():
        z = flat[bwd]
        top = order + _ERFCX_CF_DEPTH
        r = -(top + 1) / z
        ratios = {}
        for j in range(top, 0, -1):
            r = 2.0 * j / (r - 2.0 * z)
            if j <= order:
                ratios[j] = r
        val = f0f[bwd]
        for j in range(1, order + 1):
            val = val * ratios[j]
        out[bwd] = val
    return _out(out.reshape(np.shape(xx)), x)
