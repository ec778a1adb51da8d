"""Command-line front end: subcommands, exit codes and report schema."""

import io
import json
import subprocess
import sys
import time

import pytest

from kinkforge import __version__
from kinkforge.cli_report import run


def _run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_wells_of_iphi4():
    code, out, _ = _run("wells", "--poly", '{"coeffs":[[1,0],[0,0],[1,0]]}')
    assert code == 0
    locs = [w["location"] for w in json.loads(out)["wells"]]
    assert locs == [pytest.approx([0, -1]), pytest.approx([0, 1])]


def test_wells_reports_degenerate_zeros():
    code, out, _ = _run("wells", "--poly", '{"coeffs":[[1,0],[-2,0],[1,0]]}')
    data = json.loads(out)
    assert code == 0 and data["wells"] == []
    assert data["degenerate"][0]["multiplicity"] == 2


def test_degenerate_pair_exit_code():
    code, _, err = _run("connect", "--preset", "triple", "--pair", "0", "2")
    assert code == 3
    assert "degenerate segment: g(a+) = g(a-)" in err


def test_blocked_pair_exit_code():
    code, _, err = _run("connect", "--preset", "product:-1,0,1,3", "--pair", "0", "3", "--N", "256")
    assert code == 3 and "well" in err


def test_certify_refuses_double_root():
    code, out, err = _run("certify", "--poly", '{"coeffs":[[1,0],[-2,0],[1,0]]}')
    assert code == 2 and out == ""
    assert "nondegenerate well" in err and "multiplicity 2" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["wells"],
        ["wells", "--preset", "phi4", "--poly", '{"coeffs":[[1,0]]}'],
        ["wells", "--preset", "nope"],
        ["wells", "--poly", "{not json"],
        ["wells", "--poly-file", "/nonexistent/poly.json"],
        ["connect", "--preset", "phi4", "--N", "1000"],
        ["connect", "--preset", "phi4", "--N", "128"],
        ["connect", "--preset", "phi4", "--X", "0"],
        ["connect", "--preset", "phi4", "--pair", "0", "0"],
        ["connect", "--preset", "phi4", "--pair", "0", "5"],
        ["frobnicate"],
    ],
)
def test_config_errors(argv):
    assert _run(*argv)[0] == 2


def test_bad_seed_env(monkeypatch):
    monkeypatch.setenv("KINKFORGE_SEED", "banana")
    assert _run("wells", "--preset", "phi4")[0] == 2


def test_connect_writes_csv_and_metadata(tmp_path):
    out = tmp_path / "orbit.csv"
    code, _, _ = _run("connect", "--preset", "phi4", "--N", "512", "--out", str(out), "--format", "csv")
    assert code == 0
    assert out.read_text().startswith("x,e1,e2,de1,de2\n")
    assert out.read_text().count("\n") == 514
    meta = json.loads(out.with_suffix(".json").read_text())
    assert meta["energy"] == pytest.approx(1.8856181, rel=1e-7)
    assert meta["m"] == pytest.approx([-1, 0])


def test_connect_csv_to_stdout():
    code, out, _ = _run("connect", "--preset", "phi4", "--N", "256", "--format", "csv")
    assert code == 0 and out.count("\n") == 258


def test_verify_and_spectrum_json():
    code, out, _ = _run("verify", "--preset", "triple", "--N", "1024")
    assert code == 0
    assert json.loads(out)["energy"] == pytest.approx(0.3535534, rel=1e-6)
    code, out, _ = _run("spectrum", "--preset", "phi4", "--N", "1024")
    data = json.loads(out)
    assert code == 0 and data["M"] == 8 and data["verdict"] is True


def test_coercivity_json():
    code, out, _ = _run("coercivity", "--preset", "phi4", "--N", "1024")
    data = json.loads(out)
    assert code == 0 and data["form2_pass"] and data["form1_pass"]
    assert data["mu"] == pytest.approx(8.5)


@pytest.fixture(scope="module")
def phi4_report(tmp_path_factory):
    path = tmp_path_factory.mktemp("cert") / "report.json"
    start = time.perf_counter()
    code, _, _ = _run("certify", "--preset", "phi4", "--out", str(path))
    return code, path.read_text(), time.perf_counter() - start


def test_certify_phi4(phi4_report):
    code, text, seconds = phi4_report
    assert seconds <= 60
    r = json.loads(text)
    assert code == 0 and r["pass"] is True
    assert r["orbit"]["energy"] == pytest.approx(1.8856181, rel=1e-7)
    theta = r["spectral"]["theta"]
    assert theta[:3] == [pytest.approx(0, abs=1e-3), pytest.approx(6, rel=0.01), pytest.approx(6, rel=0.01)]
    assert r["spectral"]["M"] == 8
    assert r["version"] == __version__
    assert r["config"]["poly"] == {"coeffs": [[-1, 0], [0, 0], [1, 0]]}
    assert r["config"]["seed"] == 0x5EED
    assert set(r) == {
        "tool", "version", "config", "wells", "orbit", "linearization",
        "spectral", "verdict_narrative", "coercivity", "checks", "pass",
    }
    assert all(r["checks"].values())


def test_certify_is_bit_reproducible(phi4_report, tmp_path):
    path = tmp_path / "again.json"
    _run("certify", "--preset", "phi4", "--out", str(path))
    assert path.read_text() == phi4_report[1]


def test_seed_env_changes_samples_only(monkeypatch):
    monkeypatch.setenv("KINKFORGE_SEED", "7")
    code, out, _ = _run("certify", "--preset", "phi4", "--N", "1024")
    r = json.loads(out)
    assert r["config"]["seed"] == 7
    assert r["checks"]["form2"] and r["checks"]["form1"]


def test_floats_use_17_digits(phi4_report):
    assert '"energy": 1.8856180831' in phi4_report[1]


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "kinkforge", "wells", "--preset", "phi4"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and '"wells"' in proc.stdout
    proc = subprocess.run(
        [sys.executable, "-m", "kinkforge", "connect", "--preset", "triple", "--pair", "0", "2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 3 and "degenerate segment: g(a+) = g(a-)" in proc.stderr
