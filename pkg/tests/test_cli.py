"""End-to-end command-line behavior, run in-process through main()."""

import io
import re

import pytest

from quadfactor import FactorRole, Matrix, QQ, Witness, WitnessFactor
from quadfactor.cli import main

J2_TEXT = "field Q\n2 2\n0 0\n1 0\n"


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="ascii")
    return str(path)


def test_invariants_keyvalue_golden(tmp_path, capsys):
    path = _write(tmp_path, "i3.mat", Matrix.identity(QQ, 3).to_text())
    assert main(["invariants", path, "--format", "keyvalue"]) == 0
    out = capsys.readouterr().out
    assert out == "n=3\nrank=3\nnullity=0\nn0=0\ndim_RcapN=0\ndim_RplusN=3\n"


def test_invariants_text_mode(tmp_path, capsys):
    path = _write(tmp_path, "j2.mat", J2_TEXT)
    assert main(["invariants", path]) == 0
    out = capsys.readouterr().out
    assert "rank" in out and " 1" in out
    assert out.isascii()


def test_invariants_from_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(J2_TEXT))
    assert main(["invariants", "-", "--format", "keyvalue"]) == 0
    assert "nullity=1" in capsys.readouterr().out


def test_decide_failure_named(tmp_path, capsys):
    path = _write(tmp_path, "j2.mat", J2_TEXT)
    assert main(["decide", path, "--spec", "sqz=1,1"]) == 1
    out = capsys.readouterr().out
    assert "rank_budget" in out and "1 <= 0 -> FAIL" in out
    assert out.rstrip().endswith("infeasible")

    assert main(["decide", path, "--spec", "idem=1 sqz=1,1"]) == 0
    out = capsys.readouterr().out
    assert out.rstrip().endswith("feasible") and "FAIL" not in out


def test_decide_keyvalue_fields(tmp_path, capsys):
    path = _write(tmp_path, "j2.mat", J2_TEXT)
    assert main(["decide", path, "--spec", "sqz=1,1", "--format", "keyvalue"]) == 1
    out = capsys.readouterr().out
    assert "feasible=false" in out
    assert "constructive=full" in out
    assert "cond.rank_budget.lhs=1" in out
    assert "cond.rank_budget.rhs=0" in out
    assert "cond.rank_budget.passed=false" in out
    for line in out.splitlines():
        assert re.fullmatch(r"[A-Za-z0-9_.]+=\S+", line), line


def test_factor_verify_round_trip(tmp_path, capsys):
    mat = _write(tmp_path, "j2.mat", J2_TEXT)
    wit = str(tmp_path / "witness.txt")
    assert main(["factor", mat, "--spec", "idem=1 sqz=1,1", "--output", wit]) == 0
    out = capsys.readouterr().out
    assert "3 factors verified" in out

    assert main(["verify", mat, "--witness", wit]) == 0
    out = capsys.readouterr().out
    assert out.rstrip().endswith("verified")
    assert "factor 1 role=idempotent" in out


def test_factor_streams_witness_by_default(tmp_path, capsys):
    mat = _write(tmp_path, "j2.mat", J2_TEXT)
    assert main(["factor", mat, "--spec", "idem=1 sqz=1,1"]) == 0
    captured = capsys.readouterr()
    w = Witness.from_text(captured.out)
    assert len(w.factors) == 3
    assert "3 factors verified" in captured.err


def test_factor_infeasible(tmp_path, capsys):
    mat = _write(tmp_path, "j2.mat", J2_TEXT)
    assert main(["factor", mat, "--spec", "sqz=1,1"]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_factor_decide_only_shapes(tmp_path, capsys):
    mat = _write(tmp_path, "j2.mat", J2_TEXT)
    assert main(["factor", mat, "--spec", "sqz=1"]) == 2
    assert "decide-only" in capsys.readouterr().err

    # feasible scaled shape whose unscaled core is not idempotent
    g = Matrix.diagonal(QQ, [2, 6, 0])
    mat2 = _write(tmp_path, "d.mat", g.to_text())
    spec = "idem=1,1 scalars=2,1"
    assert main(["decide", mat2, "--spec", spec]) == 0
    assert "constructive: decision-only" in capsys.readouterr().out
    assert main(["factor", mat2, "--spec", spec]) == 2
    assert "decide-only" in capsys.readouterr().err


def test_verify_rejects_corrupted_witness(tmp_path, capsys):
    mat = _write(tmp_path, "j2.mat", J2_TEXT)
    wit = str(tmp_path / "w.txt")
    assert main(["factor", mat, "--spec", "idem=1 sqz=1,1", "--output", wit]) == 0
    capsys.readouterr()

    good = Witness.from_text(open(wit, encoding="ascii").read())
    factors = list(good.factors)
    factors[0] = WitnessFactor(Matrix.identity(QQ, 2), FactorRole.IDEMPOTENT, factors[0].nullity)
    bad = Witness(QQ, 2, tuple(factors))
    badpath = _write(tmp_path, "bad.txt", bad.to_text())

    assert main(["verify", mat, "--witness", badpath, "--format", "keyvalue"]) == 1
    out = capsys.readouterr().out
    assert "verified=false" in out
    assert "factor.1.nullity=false" in out


def test_oracle_clean_sweep(capsys):
    rc = main(
        ["oracle", "--field", "GF 2", "--order", "2", "--spec", "sqz=1,1",
         "--format", "keyvalue"]
    )
    assert rc == 0
    out = capsys.readouterr().out
    assert "checked=16" in out
    assert "feasible_count=7" in out
    assert "product_count=7" in out
    assert "mismatch_count=0" in out


def test_oracle_usage_errors(capsys):
    assert main(["oracle", "--field", "Q", "--order", "2", "--spec", "sqz=1,1"]) == 2
    assert "error:" in capsys.readouterr().err
    assert main(["oracle", "--field", "GF 2", "--order", "5", "--spec", "sqz=3,3"]) == 2
    assert "error:" in capsys.readouterr().err


def test_missing_file_is_usage_error(capsys):
    assert main(["invariants", "/no/such/file.mat"]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_bad_spec_is_usage_error(tmp_path, capsys):
    mat = _write(tmp_path, "j2.mat", J2_TEXT)
    assert main(["decide", mat, "--spec", "sqz=1,1,1"]) == 2
    assert main(["decide", mat, "--spec", "bogus=1"]) == 2
    capsys.readouterr()


def test_outputs_are_ascii(tmp_path, capsys):
    mat = _write(tmp_path, "g.mat", Matrix.diagonal(QQ, [-2, 0]).to_text())
    main(["decide", mat, "--spec", "idem=1 scalars=-2"])
    captured = capsys.readouterr()
    assert captured.out.isascii() and captured.err.isascii()
