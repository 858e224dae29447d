"""Command-line interface: exit codes, output schemas, determinism."""

import json

import pytest

from bergman.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_weights_inspect(capsys):
    code, out = run(capsys, "weights", "inspect",
                    "--weight", "std(alpha=-0.5)", "--p", "2")
    assert code == 0
    assert "Regular" in out and "finite" in out


def test_weights_inspect_bad_spec(capsys):
    code, _ = run(capsys, "weights", "inspect", "--weight", "nosuch(a=1)")
    assert code == 1


def test_decompose_dyadic_marks(capsys):
    code, out = run(capsys, "decompose", "--weight", "const(c=1)",
                    "--alpha", "1", "--max-degree", "64")
    assert code == 0
    marks = [int(line.split(",")[1]) for line in out.splitlines()[1:]]
    assert marks[:7] == [1, 2, 4, 8, 16, 32, 64]


def test_apply_requires_well_defined(capsys):
    # flat weight: the operator is not defined on A^2, domain-error exit
    code, _ = run(capsys, "apply", "--g", "logk(deg=64)", "--f", "poly(1)",
                  "--weight", "const(c=1)", "--p", "2")
    assert code == 1


def test_apply_classical_column(capsys):
    code, out = run(capsys, "apply", "--g", "logk(deg=64)", "--f", "poly(1)",
                    "--weight", "std(alpha=-0.5)", "--p", "2", "--kmax", "8")
    assert code == 0
    vals = [float(line.split(",")[1]) for line in out.splitlines()[1:]]
    assert vals[0] == pytest.approx(1.0, rel=1e-12)
    assert vals[1] == pytest.approx(0.5, rel=1e-12)


def test_hs_subcommand(capsys):
    code, out = run(capsys, "hs", "--g", "poly(0,0,1)",
                    "--weight", "std(alpha=-0.5)", "--K", "200")
    assert code == 0
    assert "finite" in out


def test_lacunary_subcommand(capsys):
    code, out = run(capsys, "lacunary", "--coeffs", "1,0.5,0.25",
                    "--exps", "1,2,4", "--weight", "const(c=1)", "--q", "2")
    assert code == 0


def test_verify_exit_zero_and_csv(capsys, tmp_path):
    p = tmp_path / "r.csv"
    code, _ = run(capsys, "verify", "--scenario", "PROP-LIP",
                  "--out", str(p))
    assert code == 0
    header = p.read_text().splitlines()[0]
    assert header == "scenario,case_id,param_json,lhs,rhs,ratio,verdict"


def test_verify_byte_identical_repeat(capsys, tmp_path):
    pa, pb = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, "verify", "--scenario", "TH-HS", "--seed", "17",
               "--out", str(pa))[0] == 0
    assert run(capsys, "verify", "--scenario", "TH-HS", "--seed", "17",
               "--out", str(pb))[0] == 0
    assert pa.read_bytes() == pb.read_bytes()


def test_verify_json_format(capsys, tmp_path):
    p = tmp_path / "r.json"
    code, _ = run(capsys, "verify", "--scenario", "PROP-LIP",
                  "--out", str(p), "--format", "json")
    assert code == 0
    obj = json.loads(p.read_text())
    assert obj["scenario"] == "PROP-LIP" and obj["verdict"] == "Comparable"


def test_norms_battery(capsys):
    code, out = run(capsys, "norms", "--f", "poly(1,1)",
                    "--weight", "std(alpha=-0.5)", "--p", "2", "--q", "2")
    assert code == 0
    assert "bergman" in out or "norm" in out


def test_usage_error_exit_two(capsys):
    assert main(["no-such-subcommand"]) == 2
    assert main([]) == 2
