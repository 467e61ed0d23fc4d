from __future__ import annotations

import json
import subprocess
import sys

import jsonschema
import pytest

from conftest import schema
from eudes.cli import run
from eudes.designs import format_design, read_design, verify_design
from eudes.families import example_n2


@pytest.fixture
def n2_file(tmp_path):
    p = tmp_path / "n2.eud"
    p.write_text(format_design(example_n2(2), "n2"))
    return p


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_verify_pass_and_refute(n2_file, capsys):
    assert run(["verify", "--t", "4", str(n2_file)]) == 0
    rep = _json(capsys)
    jsonschema.validate(rep, schema("verify"))
    assert rep["pass"] is True
    assert run(["verify", "--t", "6", str(n2_file)]) == 2
    rep = _json(capsys)
    jsonschema.validate(rep, schema("verify"))
    assert rep["pass"] is False


def test_verify_routes_and_approx(n2_file, capsys):
    assert run(["verify", "--t", "4", "--route", "monomial", str(n2_file)]) == 0
    capsys.readouterr()
    assert run(["verify", "--t", "4", "--mode", "approx", "--tol", "1e-30", str(n2_file)]) == 0
    jsonschema.validate(_json(capsys), schema("verify"))


def test_verify_usage_errors(n2_file, tmp_path, capsys):
    assert run(["verify", str(n2_file)]) == 1
    assert run(["verify", "--t", "4", str(tmp_path / "missing.eud")]) == 1
    assert run(["verify", "--t", "4", "--tol", "1e-9", str(n2_file)]) == 1
    assert run(["verify", "--t", "4", "--mode", "approx", "--tol", "-1", str(n2_file)]) == 1
    assert run(["nonsense"]) == 1
    bad = tmp_path / "bad.eud"
    bad.write_text("eudes v1\nn=2 points=1\nw=1 ; 0.5 0\n")
    assert run(["verify", "--t", "1", str(bad)]) == 1
    assert "error" in capsys.readouterr().err


def test_verify_deterministic_bytes(n2_file, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["verify", "--t", "4", "--out", str(a), str(n2_file)]) == 0
    assert run(["verify", "--t", "4", "--out", str(b), str(n2_file)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_schlafli_split_lift_pipeline(tmp_path, capsys):
    y, x, z = tmp_path / "y.eud", tmp_path / "x.eud", tmp_path / "z.eud"
    assert run(["schlafli", "--out", str(y)]) == 0
    assert run(["split", "--k", "2", "--out", str(x), str(y)]) == 0
    assert run(["lift", "--k", "2", "--out", str(z), str(x)]) == 0
    assert len(read_design(x, exact=True).points) == 26
    Z = read_design(z, exact=True)
    assert len(Z.points) == 27 and verify_design(Z, 4).passed
    assert run(["split", "--k", "2", "--base", "99", str(y)]) == 1
    assert run(["config", str(x)]) == 0
    rep = _json(capsys)
    jsonschema.validate(rep, schema("config"))
    assert rep["coherent"] is True and rep["tight_bound_e2"] == 21
    assert all(e.get("PQ_identity") for e in rep["eigenmatrices"])


def test_config_not_coherent(tmp_path, capsys):
    p = tmp_path / "c.eud"
    p.write_text("eudes v1\nn=2 points=4\nw=1 ; 3 4\nw=1 ; -4 3\nw=1 ; 5 12\nw=1 ; 13 0\n")
    assert run(["config", str(p)]) == 2
    rep = _json(capsys)
    jsonschema.validate(rep, schema("config"))
    assert rep["coherent"] is False


@pytest.mark.parametrize("args", [["--kind", "nontight", "--k", "2"], ["--kind", "tight", "--k", "1"],
                                  ["--kind", "n2", "--r2", "3"], ["--kind", "nontight", "--k", "3", "--r2", "2"]])
def test_family(args, capsys):
    assert run(["family", *args]) == 0
    rep = _json(capsys)
    jsonschema.validate(rep, schema("family"))
    assert rep["golden"]["mismatches"] == []
    assert all(v == "0" for v in rep["nine_equations"])


def test_family_emit_points(tmp_path, capsys):
    assert run(["family", "--kind", "nontight", "--k", "2", "--r2", "3", "--emit-points",
                "--out-dir", str(tmp_path)]) == 0
    rep = _json(capsys)
    d = read_design(rep["points_file"], exact=True)
    assert verify_design(d, 4).passed
    assert run(["family", "--kind", "n2", "--r2", "1/2", "--emit-points", "--out-dir", str(tmp_path)]) == 0
    assert read_design(_json(capsys)["points_file"], exact=True)


def test_family_usage_errors():
    assert run(["family", "--kind", "tight"]) == 1
    assert run(["family", "--kind", "n2", "--k", "2"]) == 1
    assert run(["family", "--kind", "tight", "--k", "1", "--r2", "2"]) == 1
    assert run(["family", "--kind", "nontight", "--k", "2", "--r2", "1.5"]) == 1
    assert run(["family", "--kind", "nontight", "--k", "1"]) == 1


def test_search_stream_and_params(tmp_path, capsys):
    assert run(["search", "--n-min", "20", "--n-max", "24", "--epsilon", "+1", "--emit-params",
                "--out-dir", str(tmp_path)]) == 0
    cap = capsys.readouterr()
    lines = [json.loads(x) for x in cap.out.splitlines()]
    assert [(r["n"], r["N1"], r["N2"]) for r in lines] == [(22, 33, 243)]
    for r in lines:
        jsonschema.validate(r, schema("search_record"))
    summary = json.loads(cap.err.strip().splitlines()[-1])
    assert summary["feasible"] == [[22, 33, 243, 22, 162]]
    params = json.loads((tmp_path / "params_n22_N33_eps+.json").read_text())
    jsonschema.validate(params, schema("params"))
    assert params["n"] == 22


def test_search_keep_all_schema(capsys):
    assert run(["search", "--n-min", "5", "--n-max", "9", "--keep", "all"]) == 0
    lines = [json.loads(x) for x in capsys.readouterr().out.splitlines()]
    assert lines
    for r in lines:
        jsonschema.validate(r, schema("search_record"))
    assert run(["search", "--n-min", "9", "--n-max", "5"]) == 1


def test_dioph(capsys):
    assert run(["dioph", "--kind", "b", "--limit", "1000"]) == 0
    rep = _json(capsys)
    jsonschema.validate(rep, schema("dioph"))
    assert rep["hits"] == [2, 3]
    assert run(["dioph", "--kind", "a", "--limit", "2"]) == 1


def test_module_entry_point(n2_file):
    out = subprocess.run([sys.executable, "-m", "eudes", "verify", "--t", "6", str(n2_file)],
                         capture_output=True, text=True)
    assert out.returncode == 2
    assert json.loads(out.stdout)["pass"] is False
    out = subprocess.run([sys.executable, "-m", "eudes", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and "0.1.0" in out.stdout
