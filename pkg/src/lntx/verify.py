"""Cross-checks of every closed form against independent numerical routes.

Each suite yields ``Check`` records; ``run`` collects them. The same suites
back the ``verify`` CLI command and the acceptance tests.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass

import numpy as np

from . import inversion, ode, operator, specfun, table, transform
from .functions import Const, CosXn, ExpNegAXn, Power, SinXn
from .inversion import PowerSeriesInvS, RationalInS

GRID = list(itertools.product(table.VALIDATION_N, table.VALIDATION_Y))


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    error: float
    tol: float

    @property
    def passed(self) -> bool:
        return math.isfinite(self.error) and self.error <= self.tol

    def to_dict(self):
        d = asdict(self)
        d["passed"] = self.passed
        return d


def _rel(a, b, scale=None):
    s = max(abs(a), abs(b)) if scale is None else scale
    return abs(a - b) / s if s > 0 else abs(a - b)


def _valid(pid, params, n, y):
    try:
        table.make_function(pid, **params).validate(n, y)
        return True
    except Exception:
        return False


# -- catalog -------------------------------------------------------------------

def suite_pairs(tol=1e-8, singular_tol=1e-6):
    """Closed form vs quadrature vs Laplace-relation path on the grid."""
    for pid, params in table.VALIDATION_PARAMS.items():
        t = singular_tol if pid == "erfc_inv" else tol
        f = table.make_function(pid, **params)
        for n, y in GRID:
            if not _valid(pid, params, n, y):
                continue
            c = table.eval_pair(pid, n, y, **params)
            q = transform.forward_numeric(f, n, y)
            lap = transform.forward_via_laplace(f, n, y)
            err = max(_rel(c, q, abs(c)), _rel(c, lap, abs(c)), _rel(q, lap, abs(c)))
            yield Check("pairs", f"{pid} n={n} y={y:g}", err, t)


SHIFT_FAMILIES = (("const", {}), ("cos_axn", {"a": 0.5}), ("bessel_j0", {"a": 0.5}))
SHIFT_AMOUNTS = (0.5, 1.0, 3.0)


def suite_shift(tol=1e-8):
    for (pid, params), a in itertools.product(SHIFT_FAMILIES, SHIFT_AMOUNTS):
        f = table.make_function(pid, **params)
        for n, y in GRID:
            closed = table.shift_closed_form(pid, a, n, y, **params)
            numeric = transform.forward_numeric(transform.Damped(f, a), n, y)
            yield Check("shift", f"{pid} a={a:g} n={n} y={y:g}", _rel(closed, numeric, abs(closed)), tol)


def suite_laplace(tol=1e-8):
    """Classical Laplace pairs at n = 1, against textbook formulas."""
    cases = (
        ("1 -> 1/y", Const(), lambda y: 1.0 / y),
        ("x^3 -> 3!/y^4", Power(3.0), lambda y: 6.0 / y**4),
        ("sin(2x) -> 2/(y^2+4)", SinXn(2.0), lambda y: 2.0 / (y * y + 4.0)),
        ("cos(2x) -> y/(y^2+4)", CosXn(2.0), lambda y: y / (y * y + 4.0)),
        ("exp(-x/2) -> 1/(y+1/2)", ExpNegAXn(0.5), lambda y: 1.0 / (y + 0.5)),
    )
    for name, f, ref in cases:
        for y in table.VALIDATION_Y:
            r = ref(y)
            q = transform.forward_numeric(f, 1, y)
            c = table.closed_form_of(f, 1, y)
            yield Check("laplace", f"{name} y={y:g}", max(_rel(r, q, abs(r)), _rel(r, c, abs(r))), tol)


# -- operators -----------------------------------------------------------------

def _thm21_functions(n):
    return (Const(), Power(float(n)), ExpNegAXn(0.5), CosXn(0.5))


def suite_thm21(tol=1e-6):
    """Transform of delta^k f vs the boundary-term formula.

    The right-hand side is a difference of terms up to (n y^n)^k F, so the
    error is measured against the magnitude of those terms.
    """
    for n, y in GRID:
        for f in _thm21_functions(n):
            try:
                f.validate(n, y)
            except Exception:
                continue
            F = table.closed_form_of(f, n, y)
            for k in (1, 2, 3):
                init = operator.initial_data(f, n, k)
                lhs = transform.forward_numeric(operator.delta_spec(f, k), n, y)
                rhs = operator.thm21_rhs(F, n, y, k, init)
                scale = max(abs(lhs), operator.thm21_scale(F, n, y, k, init))
                yield Check("operators", f"derivative identity {f} k={k} n={n} y={y:g}", _rel(lhs, rhs, scale), tol)


def suite_thm22(tol=1e-7):
    for pid, params in table.VALIDATION_PARAMS.items():
        f = table.make_function(pid, **params)
        for n, y in GRID:
            if not _valid(pid, params, n, y):
                continue
            for k in (1, 2):
                sym = operator.thm22_moment(pid, n, params, k, y)
                num = transform.forward_numeric(transform.Moment(f, k), n, y)
                yield Check("operators", f"moment identity {pid} k={k} n={n} y={y:g}", _rel(sym, num, abs(sym)), tol)


def suite_operators():
    yield from suite_thm21()
    yield from suite_thm22()


# -- inversion -----------------------------------------------------------------

X_GRID = np.linspace(0.0, 3.0, 61)


def check_example_24(n, a, tol=1e-10):
    R = RationalInS((1.0,), (a ** (2 * n), 0.0, 1.0))
    inv = inversion.RationalInverse(R, n)
    got = inv(X_GRID)
    b = a**n
    want = (n / b) * np.sin(b * X_GRID**n)
    err = float(np.max(np.abs(got - want))) / (n / b)
    leak = float(np.max(inv.leakage(X_GRID)))
    return err, leak


def check_example_25(n, a):
    series = PowerSeriesInvS(lambda m: (-(a**n)) ** m / math.factorial(m), 1.0)
    got = inversion.invert_series(series, n, X_GRID)
    want = n * specfun.bessel_j(0, 2.0 * a ** (n / 2) * X_GRID ** (n / 2))
    return float(np.max(np.abs(got - want))) / n


def random_stable_rationals(count=20, seed=20240611):
    """Rationals with left-half-plane poles and zeros, so R(y^n) > 0 for y > 0."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        deg = int(rng.integers(1, 5))
        roots = []
        while len(roots) < deg:
            if deg - len(roots) >= 2 and rng.random() < 0.5:
                z = complex(-rng.uniform(0.2, 3.0), rng.uniform(0.2, 3.0))
                roots += [z, z.conjugate()]
            else:
                roots.append(-rng.uniform(0.2, 3.0))
        den = np.real(np.polynomial.polynomial.polyfromroots(roots)) * rng.uniform(0.5, 2.0)
        ndeg = int(rng.integers(0, deg))
        zeros = [-rng.uniform(0.1, 4.0) for _ in range(ndeg)]
        num = np.real(np.polynomial.polynomial.polyfromroots(zeros)) * rng.uniform(0.5, 2.0)
        out.append(RationalInS(tuple(num), tuple(den)))
    return out


def rational_round_trip(R: RationalInS, n: int, ys=(1.0, 2.0)):
    inv = inversion.RationalInverse(R, n)
    f = transform.blackbox(inv, name="residue inverse")
    errs = []
    for y in ys:
        want = R(y**n)
        got = transform.forward_numeric(f, n, y)
        errs.append(_rel(want, got, abs(want)))
    return max(errs)


SERIES_ROUND_TRIP = ("const", "power", "exp_neg_axn", "bessel_j0", "bessel_jv")
SERIES_N = (1, 2, 4)


def series_round_trip(pid, n):
    params = table.VALIDATION_PARAMS[pid]
    s = table.image_series(pid, n, **params)
    f = table.make_function(pid, **params)
    got = inversion.invert_series(s, n, X_GRID)
    want = f.evaluate(X_GRID, n)
    return float(np.max(np.abs(got - want) / np.maximum(1.0, np.abs(want))))


def suite_inversion():
    for n, a in ((2, 1.0), (4, 1.5)):
        err, leak = check_example_24(n, a)
        yield Check("inversion", f"sin residues n={n} a={a:g}", err, 1e-10)
        yield Check("inversion", f"sin leakage n={n} a={a:g}", leak, 1e-10)
    for n, a in ((1, 1.0), (2, 1.0), (4, 0.5)):
        yield Check("inversion", f"J0 series n={n} a={a:g}", check_example_25(n, a), 1e-9)
    for i, R in enumerate(random_stable_rationals()):
        n = (1, 2, 4)[i % 3]
        yield Check("inversion", f"rational round trip #{i} n={n} deg={len(R.den) - 1}",
                    rational_round_trip(R, n), 1e-6)
    for pid in SERIES_ROUND_TRIP:
        for n in SERIES_N:
            yield Check("inversion", f"series round trip {pid} n={n}", series_round_trip(pid, n), 1e-9)


# -- ode -----------------------------------------------------------------------

ODE_CASES = ((1, 2, 3), (1, 2, 5), (1, 4, 5), (2, 1, None), (2, 2, None), (2, 4, None))
ODE_X = (0.1, 0.5, 1.0, 2.0, 5.0, 10.0)
ODE_Y = (1.5, 2.0, 3.0)


def ode_errors(family, n, v):
    p = ode.OdeProblem(family, n, v)
    sol = ode.solve(p)
    res = max(ode.residual(p, sol, x) for x in ODE_X)
    f = transform.blackbox(sol, name="ode solution")
    img = max(_rel(sol.image(y), transform.forward_numeric(f, n, y), abs(sol.image(y))) for y in ODE_Y)
    return res, img


def suite_ode():
    for fam, n, v in ODE_CASES:
        res, img = ode_errors(fam, n, v)
        tag = f"family {fam} n={n}" + (f" v={v}" if v else "")
        yield Check("ode", f"{tag} residual", res, 1e-8)
        yield Check("ode", f"{tag} transform", img, 1e-7)


SUITES = {
    "pairs": suite_pairs,
    "shift": suite_shift,
    "operators": suite_operators,
    "inversion": suite_inversion,
    "ode": suite_ode,
    "laplace": suite_laplace,
}


def run(suite: str = "all") -> list[Check]:
    names = list(SUITES) if suite == "all" else [suite]
    out = []
    for name in names:
        out.extend(SUITES[name]())
    return out
