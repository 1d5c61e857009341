import json
import subprocess
import sys

import pytest

from lntx import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_grid_parsing():
    assert cli.parse_grid("0:1:0.25") == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert cli.parse_grid("0:1:0.3") == [0.0, 0.3, 0.6, 0.9]
    assert cli.parse_grid("0:0.95:0.1")[-1] == pytest.approx(0.9)
    assert cli.parse_grid("1,2.5") == [1.0, 2.5]
    assert cli.parse_grid("3") == [3.0]
    for bad in ("1:2", "a:b:c", "0:1:0", "2:1:0.1", "x"):
        with pytest.raises(cli.CliError):
            cli.parse_grid(bad)


def test_transform_exp(capsys):
    code, out, _ = run(capsys, "transform", "--pair", "exp_neg_axn", "--a", "1", "--n", "2", "--y", "1", "--json")
    assert code == 0
    rec = json.loads(out)
    assert rec["schema"] == 1 and rec["tolerances_met"]
    closed = [v["result"] for v in rec["values"] if v["method"] == "closed_form"]
    assert closed == [pytest.approx(0.25, rel=1e-15)]
    assert rec["max_spread"] <= 1e-8


def test_transform_const_laplace(capsys):
    code, out, _ = run(capsys, "transform", "--pair", "const", "--n", "1", "--y", "2", "--csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "y,closed,quadrature,laplace,spread"
    assert float(lines[1].split(",")[1]) == 0.5


def test_transform_validity_exit(capsys):
    code, _, err = run(capsys, "transform", "--pair", "erf", "--a", "1", "--n", "2", "--y", "0")
    assert code == 2 and "Re(y)>0 violated" in err


def test_transform_bad_n(capsys):
    code, _, err = run(capsys, "transform", "--pair", "const", "--n", "3", "--y", "1")
    assert code == 2 and "n = 2^k" in err


def test_invert_examples(capsys):
    code, out, _ = run(capsys, "invert", "--rational", "num=1;den=1,0,1", "--n", "2", "--x", "1.2533141373155", "--json")
    assert code == 0 and json.loads(out)["values"][0]["result"] == pytest.approx(2.0, rel=1e-12)
    code, out, _ = run(capsys, "invert", "--series", "bessel_j0_image", "--a", "1", "--n", "2", "--x", "0", "--json")
    assert code == 0 and json.loads(out)["values"][0]["result"] == pytest.approx(2.0, rel=1e-15)
    code, out, _ = run(capsys, "invert", "--rational", "num=1;den=2,1", "--n", "2", "--x", "0", "--json")
    rec = json.loads(out)
    # single residue n e^{-2 x^n} at x = 0
    assert code == 0 and rec["values"][0]["result"] == pytest.approx(2.0, rel=1e-15)
    assert rec["round_trip_spread"] <= 1e-6


def test_invert_series_round_trip_and_csv(capsys):
    code, out, _ = run(capsys, "invert", "--series", "bessel_j0", "--a", "0.5", "--n", "2", "--x", "0:1:0.5", "--csv")
    assert code == 0
    assert out.splitlines()[0] == "x,value"
    assert len(out.splitlines()) == 4


def test_invert_errors(capsys):
    code, _, err = run(capsys, "invert", "--rational", "num=1;den=1,3,3,1", "--n", "2", "--x", "1")
    assert code == 2 and "multiplicity" in err
    code, _, err = run(capsys, "invert", "--n", "2", "--x", "1")
    assert code == 2
    code, _, err = run(capsys, "invert", "--series", "cos_axn", "--n", "2", "--x", "1")
    assert code == 2


def test_solve_ode(capsys):
    code, out, _ = run(capsys, "solve-ode", "--family", "2", "--n", "2", "--x", "0:5:0.5", "--json")
    rec = json.loads(out)
    assert code == 0 and rec["max_residual"] <= 1e-8 and len(rec["values"]) == 11
    code, out, _ = run(capsys, "solve-ode", "--family", "1", "--n", "2", "--v", "3", "--json")
    assert code == 0 and json.loads(out)["alpha"] == "3"
    code, _, err = run(capsys, "solve-ode", "--family", "1", "--n", "2", "--v", "4")
    assert code == 2 and "v must equal 2^m+1 and exceed n" in err


def test_solve_ode_text(capsys):
    code, out, _ = run(capsys, "solve-ode", "--family", "1", "--n", "4", "--v", "5", "--x", "1")
    assert code == 0 and "J_3" in out


def test_verify_suite_pairs(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "pairs")
    assert code == 0 and "all checks passed" in out


def test_json_is_deterministic(capsys):
    argv = ("transform", "--pair", "gauss_x2n", "--a", "0.5", "--n", "4", "--y", "0.6:2:0.7", "--json")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    _, a, _ = run(capsys, "verify", "--suite", "ode", "--json")
    _, b, _ = run(capsys, "verify", "--suite", "ode", "--json")
    assert a == b and json.loads(a)["schema"] == 1


def test_quad_order_floor(capsys):
    code, _, err = run(capsys, "transform", "--pair", "const", "--n", "2", "--y", "1", "--quad-order", "8")
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lntx", "transform", "--pair", "const", "--n", "2", "--y", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "5.000000000000000e-01" in proc.stdout
