"""Command-line front end.

    lntx transform --pair exp_neg_axn --a 1 --n 2 --y 1
    lntx invert --rational "num=1;den=1,0,1" --n 2 --x 0:3:0.5
    lntx solve-ode --family 2 --n 2 --x 0:5:0.5
    lntx verify --suite all --json

Validation failures exit with status 2 and name the violated condition;
``verify`` exits 1 when any check fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time

import numpy as np

from . import inversion, ode, table, transform, verify
from .errors import LntxError

SCHEMA = 1
DEFAULT_TOL = 1e-8


class CliError(Exception):
    pass


def parse_grid(text: str) -> list[float]:
    """``start:stop:step`` (endpoint included within half a step), a comma list, or one value."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise CliError(f"grid must be start:stop:step, got {text!r}")
        try:
            start, stop, step = (float(p) for p in parts)
        except ValueError:
            raise CliError(f"bad grid {text!r}") from None
        if not step > 0 or stop < start:
            raise CliError(f"grid needs step > 0 and stop >= start, got {text!r}")
        count = int(math.floor((stop - start) / step + 0.5)) + 1
        return [round(start + i * step, 12) for i in range(count)]
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise CliError(f"bad value list {text!r}") from None


def _params(args, pair_id: str) -> dict:
    names = table.VALIDATION_PARAMS[pair_id]
    out = {}
    for name in names:
        val = getattr(args, name, None)
        if val is None:
            val = names[name]
        out[name] = float(val)
    return out


def _num(x):
    # JSON has no NaN/inf; emit them as strings so the output stays parseable.
    x = float(x)
    return x if math.isfinite(x) else repr(x)


def _record(command, inputs, values, ok, **extra):
    rec = {"schema": SCHEMA, "command": command, "inputs": inputs,
           "values": values, "tolerances_met": bool(ok)}
    rec.update(extra)
    return rec


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(float(v)) for v in r])
    return buf.getvalue()


# -- commands ------------------------------------------------------------------

def cmd_transform(args):
    pid = args.pair
    table.get_pair(pid)
    params = _params(args, pid)
    f = table.make_function(pid, **params)
    ys = parse_grid(args.y)
    values, rows = [], []
    worst = 0.0
    for y in ys:
        closed = table.eval_pair(pid, args.n, y, **params)
        quad = transform.forward_numeric(f, args.n, y, quad_order=args.quad_order)
        lap = transform.forward_via_laplace(f, args.n, y)
        trio = (closed, quad, lap)
        spread = (max(trio) - min(trio)) / abs(closed) if closed != 0 else max(trio) - min(trio)
        worst = max(worst, spread)
        rows.append((y, closed, quad, lap, spread))
        for method, val in zip(("closed_form", "quadrature", "laplace"), trio):
            values.append({"point": {"y": y}, "result": _num(val), "method": method})
    inputs = {"pair": pid, "n": args.n, "params": params, "y": ys,
              "quad_order": args.quad_order or transform.default_quad_order()}
    rec = _record("transform", inputs, values, worst <= args.tol, max_spread=_num(worst))

    def text():
        lines = [f"L_{args.n}{{{table.PAIRS[pid].latex_f}}}  params={params}",
                 f"{'y':>8} {'closed':>22} {'quadrature':>22} {'laplace':>22} {'spread':>9}"]
        for y, c, q, lap, s in rows:
            lines.append(f"{y:8.4g} {c:22.15e} {q:22.15e} {lap:22.15e} {s:9.1e}")
        lines.append(f"max spread {worst:.2e} (tol {args.tol:g})")
        return "\n".join(lines)

    csv_text = _csv(["y", "closed", "quadrature", "laplace", "spread"], rows)
    return rec, text, csv_text


def _round_trip_ys(max_real_pole: float, n: int):
    # y^n must sit right of every pole for the forward integral to converge
    return [y for y in (1.0, 2.0) if y**n > max_real_pole + 0.1]


def cmd_invert(args):
    if (args.rational is None) == (args.series is None):
        raise CliError("give exactly one of --rational or --series")
    n = transform.as_order(args.n)
    xs = parse_grid(args.x)
    if args.rational is not None:
        R = inversion.RationalInS.parse(args.rational)
        inv = inversion.RationalInverse(R, n)
        vals = np.atleast_1d(inv(xs))
        method = "residues"
        spread = 0.0
        f = transform.blackbox(inv, name="residue inverse")
        for y in _round_trip_ys(inv.max_real_pole, n):
            want = R(y**n)
            spread = max(spread, abs(transform.forward_numeric(f, n, y) - want) / abs(want))
        inputs = {"rational": {"num": list(R.num), "den": list(R.den)}, "n": n, "x": xs}
        extra = {"poles": [{"re": p.location.real, "im": p.location.imag,
                            "multiplicity": p.multiplicity} for p in inv.poles]}
    else:
        name = args.series
        pid = name[: -len("_image")] if name.endswith("_image") else name
        if pid not in table.PAIRS:
            raise CliError(f"unknown series {name!r}; known: {', '.join(table.series_names())}")
        params = _params(args, pid)
        series, image, _ = table.named_series(name, n, **params)
        vals = np.atleast_1d(inversion.invert_series(series, n, xs))
        method = "series"
        f = transform.blackbox(lambda x: inversion.invert_series(series, n, x), name=name)
        spread = 0.0
        for y in (1.0, 2.0):
            want = image(y)
            spread = max(spread, abs(transform.forward_numeric(f, n, y) - want) / abs(want))
        inputs = {"series": name, "n": n, "params": params, "x": xs}
        extra = {}
    values = [{"point": {"x": x}, "result": _num(v), "method": method} for x, v in zip(xs, vals)]
    rt_tol = max(args.tol, 1e-6)
    rec = _record("invert", inputs, values, spread <= rt_tol, round_trip_spread=_num(spread), **extra)

    def text():
        lines = [f"{'x':>10} {'f(x)':>24}"]
        lines += [f"{x:10.6g} {v:24.16e}" for x, v in zip(xs, vals)]
        lines.append(f"round-trip spread {spread:.2e}")
        return "\n".join(lines)

    return rec, text, _csv(["x", "value"], zip(xs, vals))


def cmd_solve_ode(args):
    p = ode.OdeProblem(args.family, args.n, args.v)
    sol = ode.solve(p)
    xs = parse_grid(args.x)
    vals = [sol(x) if x > 0 else 0.0 for x in xs]
    pos = [x for x in xs if x > 0]
    res = max((ode.residual(p, sol, x) for x in pos), default=0.0)
    values = [{"point": {"x": x}, "result": _num(v), "method": "bessel"} for x, v in zip(xs, vals)]
    info = sol.to_dict()
    inputs = {"family": p.family, "n": p.n, "v": p.v, "x": xs}
    rec = _record("solve-ode", inputs, values, res <= args.tol,
                  alpha=info["alpha"], C=info["C"], image=info["image"],
                  solution=sol.describe(), max_residual=_num(res))

    def text():
        img = sol.image
        lines = [f"equation  {p.describe()}",
                 f"image     z_bar(y) = {img.C:.12g} y^{img.power_exponent} exp({img.exp_coefficient:.12g}/y^{p.n})",
                 f"solution  {sol.describe()}",
                 f"alpha = {sol.bessel_order}   C = {sol.C:.12g}",
                 f"{'x':>10} {'z(x)':>24}"]
        lines += [f"{x:10.6g} {v:24.16e}" for x, v in zip(xs, vals)]
        lines.append(f"max normalized residual {res:.2e}")
        return "\n".join(lines)

    return rec, text, _csv(["x", "value"], zip(xs, vals))


def cmd_verify(args):
    checks = []
    timings = {}
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        t0 = time.perf_counter()
        checks.extend(verify.SUITES[name]())
        timings[name] = time.perf_counter() - t0
    ok = all(c.passed for c in checks)
    values = [{"point": {"suite": c.suite, "check": c.name}, "result": _num(c.error),
               "method": "tol=%g" % c.tol, "passed": c.passed} for c in checks]
    summary = {}
    for c in checks:
        s = summary.setdefault(c.suite, {"checks": 0, "failed": 0, "worst_ratio": 0.0})
        s["checks"] += 1
        s["failed"] += 0 if c.passed else 1
        s["worst_ratio"] = max(s["worst_ratio"], c.error / c.tol if math.isfinite(c.error) else math.inf)
    for s in summary.values():
        s["worst_ratio"] = _num(s["worst_ratio"])
    rec = _record("verify", {"suite": args.suite}, values, ok, summary=summary)

    def text():
        lines = [f"{'suite':<10} {'checks':>7} {'failed':>7} {'worst err/tol':>14} {'time':>8}"]
        for name in summary:
            s = summary[name]
            lines.append(f"{name:<10} {s['checks']:7d} {s['failed']:7d} "
                         f"{float(s['worst_ratio']):14.2e} {timings.get(name, 0.0):7.2f}s")
        for c in checks:
            if not c.passed:
                lines.append(f"FAIL {c.suite}: {c.name}  error {c.error:.3e} > tol {c.tol:g}")
        lines.append("all checks passed" if ok else "some checks FAILED")
        return "\n".join(lines)

    csv_text = "suite,check,error,tol,passed\n" + "".join(
        f"{c.suite},{c.name},{c.error!r},{c.tol!r},{c.passed}\n" for c in checks)
    return rec, text, csv_text


# -- argument parsing ----------------------------------------------------------

def _add_params(p):
    p.add_argument("--a", type=float, help="parameter a")
    p.add_argument("--v", type=float, help="Bessel order v (bessel_jv)")
    p.add_argument("--k", type=float, help="power k (power)")


def _add_output(p):
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="tolerance (default 1e-8)")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", action="store_true", help="print a JSON record")
    g.add_argument("--csv", action="store_true", help="print CSV rows")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lntx",
        description="Generalized L_n integral transform: pairs, inversion, ODEs, verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="closed form vs quadrature vs Laplace path")
    p.add_argument("--pair", required=True, choices=list(table.PAIRS))
    p.add_argument("--n", type=int, required=True, help="order n = 2^k")
    p.add_argument("--y", required=True, help="y value, list or start:stop:step grid")
    p.add_argument("--quad-order", type=int, default=None,
                   help="Gauss-Laguerre order (default 96, env LNTX_QUAD_ORDER)")
    _add_params(p)
    _add_output(p)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("invert", help="inverse transform by residues or series")
    p.add_argument("--rational", help='rational in s = y^n: "num=c0,c1,...;den=d0,d1,..."')
    p.add_argument("--series", help="named series: " + ", ".join(table.series_names()))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", required=True, help="x value, list or start:stop:step grid")
    _add_params(p)
    _add_output(p)
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("solve-ode", help="Bessel-type ODE families via the transform")
    p.add_argument("--family", type=int, required=True, choices=(1, 2))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--v", type=int, default=None, help="v = 2^m + 1 > n (family 1)")
    p.add_argument("--x", default="0:5:0.5", help="x grid (default 0:5:0.5)")
    _add_output(p)
    p.set_defaults(func=cmd_solve_ode)

    p = sub.add_parser("verify", help="run the cross-check suites")
    p.add_argument("--suite", default="all", choices=["all", *verify.SUITES])
    _add_output(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "quad_order", None) is not None and args.quad_order < 16:
        print("error: --quad-order must be at least 16", file=sys.stderr)
        return 2
    try:
        rec, text, csv_text = args.func(args)
    except (LntxError, CliError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(rec, indent=2))
    elif args.csv:
        sys.stdout.write(csv_text)
    else:
        print(text())
    return 0 if rec["tolerances_met"] else 1


if __name__ == "__main__":
    sys.exit(main())
