import csv
import io
import json
import math
import subprocess
import sys

import pytest

import lunezeta.cli as cli
from lunezeta.result import RouteDisagreementError

# corrected references under which every quick criterion is expected to pass
CORRECTED = """
target.det_s2 = 3.1953114860591376
target.Z2 = 0.6666666666666666
target.det_slope_s2 = -2.1302076573727584
"""


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def test_compute_json():
    code, text = run("compute", "--dim", "2", "--k", "1", "--route", "both")
    assert code == 0
    rec = json.loads(text)
    assert set(rec) >= {"dim", "k", "a", "zeta0", "zeta0_prime", "det", "zeta0_err", "route"}
    assert rec["zeta0"] == pytest.approx(-2 / 3, abs=1e-12)
    assert rec["det"] == pytest.approx(math.exp(-rec["zeta0_prime"]))


def test_domain_error_exit_code(capsys):
    code, text = run("compute", "--dim", "2", "--k", "1.5")
    assert code == cli.EXIT_DOMAIN == 2
    assert text == ""
    assert "domain error" in capsys.readouterr().err


def test_route_disagreement_exit_code(monkeypatch, capsys):
    def broken(*args, **kwargs):
        raise RouteDisagreementError("route A 1.0 and route B 2.0 differ")

    monkeypatch.setattr(cli, "zeta_invariants", broken)
    code, _ = run("compute", "--dim", "3", "--k", "0.5", "--route", "both")
    assert code == cli.EXIT_ROUTE == 3
    assert "route disagreement" in capsys.readouterr().err


def test_negative_tolerance_is_rejected():
    code, _ = run("compute", "--dim", "2", "--k", "0.5", "--tol", "-1")
    assert code == 2


def test_sweep_csv():
    code, text = run("sweep", "--dim", "2", "--k-min", "0.5", "--k-max", "1", "--steps", "3")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [float(r["k"]) for r in rows] == [0.5, 0.75, 1.0]
    assert list(rows[0]) == cli.SWEEP_FIELDS
    for r in rows:
        a = float(r["a"])
        assert float(r["zeta0"]) == pytest.approx(-1 + a / 6 + 1 / (6 * a), abs=1e-12)
        assert float(r["omega"]) == pytest.approx(math.pi * float(r["k"]))
        assert r["error"] == ""
    assert float(rows[1]["zeta0_prime"]) == float(rows[1]["zeta0_prime"])  # repr round-trips


def test_sweep_is_deterministic_across_workers():
    args = ("sweep", "--dim", "3", "--k-min", "0.4", "--steps", "4", "--format", "json")
    code1, serial = run(*args)
    code2, parallel = run(*args, "--jobs", "2")
    assert code1 == code2 == 0
    assert json.loads(serial) == json.loads(parallel)


def test_k_grid():
    assert cli.k_grid(0.2, 1.0, 5) == pytest.approx([0.2, 0.4, 0.6, 0.8, 1.0])
    assert cli.k_grid(0.3, 0.7, 1) == [0.7]
    code, _ = run("sweep", "--dim", "2", "--k-min", "0", "--steps", "3")
    assert code == 2


def test_spectrum_csv_and_json():
    code, text = run("spectrum", "--dim", "2", "--k", "1", "--count", "3")
    assert code == 0
    assert text.splitlines() == ["eigenvalue,multiplicity", "2.0,3", "6.0,5", "12.0,7"]
    code, text = run("spectrum", "--dim", "2", "--k", "0.5", "--count", "2", "--format", "json")
    assert json.loads(text) == [{"eigenvalue": 2.0, "multiplicity": 1}, {"eigenvalue": 6.0, "multiplicity": 3}]


def test_profile():
    code, text = run("profile", "--k", "0.6", "--samples", "5")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 5
    assert float(rows[-1]["x"]) == 0.6 and float(rows[-1]["z"]) == 0.0
    code, text = run("profile", "--k", "0.6", "--samples", "3", "--format", "json")
    assert len(json.loads(text)) == 3


def test_verify_with_corrected_references(tmp_path):
    cfg = tmp_path / "corrected.cfg"
    cfg.write_text(CORRECTED)
    code, text = run("verify", "--level", "quick", "--config", str(cfg))
    assert code == 0, text
    assert text.count("[PASS]") == 6
    assert text.strip().endswith("6/6 criteria passed")


def test_verify_negative_control(tmp_path):
    # a reference shifted by 1e-5 must be caught
    cfg = tmp_path / "tampered.cfg"
    cfg.write_text(CORRECTED + "target.zeta_prime_s2 = -1.161674575\n")
    code, text = run("verify", "--level", "quick", "--config", str(cfg))
    assert code == cli.EXIT_VERIFY_FAILED
    assert "[FAIL] criterion  2" in text


def test_verify_unknown_target(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("target.nonsense = 1\n")
    code, _ = run("verify", "--level", "quick", "--config", str(cfg))
    assert code == 2


def test_bad_config_file(tmp_path):
    code, _ = run("compute", "--dim", "2", "--k", "1", "--config", str(tmp_path / "missing.cfg"))
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lunezeta", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "0.1.0" in proc.stdout
