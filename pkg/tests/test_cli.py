import csv
import json
import subprocess
import sys

import pytest

from cyclic_higgs.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_g2(capsys, tmp_path):
    path = tmp_path / "g2.json"
    code, _, _ = run(capsys, "verify", "--group", "G2", "--json-out", str(path))
    rep = json.loads(path.read_text())
    assert code == 0 and rep["status"] == "pass"
    brackets = [e for e in rep["entries"] if e["suite"] == "brackets"]
    assert len(brackets) == 9 and all(e["status"] == "pass" for e in brackets)
    meta = rep["engine_metadata"]
    assert meta["radicand_tower"] == [3, 5] and "sign_conventions" in meta


def test_verify_a2_torus(capsys):
    code, out, _ = run(capsys, "verify", "--group", "A2", "--suite", "torus")
    rep = json.loads(out)
    entry = next(e for e in rep["entries"] if e["proposition_id"] == "torus.h_eta")
    assert code == 0 and entry["status"] == "pass" and entry["quote_anchor"] == "h_eta in t_C"


def test_verify_deterministic(capsys):
    reps = []
    for _ in range(2):
        _, out, _ = run(capsys, "verify", "--group", "C2", "--suite", "cyclic_dec", "--suite", "higgs",
                        "--seed", "3")
        reps.append([ln for ln in out.splitlines() if '"timestamp"' not in ln])
    assert reps[0] == reps[1]


def test_unknown_group_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--group", "B7"])
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_report_tables(capsys):
    _, out, _ = run(capsys, "report", "--group", "A2")
    assert json.loads(out)["exponents"] == [1, 2]
    _, out, _ = run(capsys, "report", "--group", "C2")
    assert json.loads(out)["dim_t_C"] == 2
    _, out, _ = run(capsys, "report", "--group", "G2")
    rep = json.loads(out)
    assert rep["k0_positive"] is True and rep["k0"] == "5"
    assert rep["structure_constants"]["max_abs"] == 3


def test_solve_a2(capsys, tmp_path):
    csv_path = tmp_path / "state.csv"
    code, out, _ = run(capsys, "solve", "--group", "A2", "--q-re", "1", "--grid", "32", "--csv-out", str(csv_path))
    rep = json.loads(out)
    assert code == 0 and rep["converged"] and rep["distance_to_constant"] <= 1e-8
    assert set(rep) >= {"converged", "iters", "residual_norm", "sign_used", "total_area", "constant_solution",
                        "distance_to_constant"}
    rows = list(csv.reader(csv_path.open()))
    assert rows[0] == ["x", "y", "omega_0", "residual", "area_density"] and len(rows) == 32 * 32 + 1


def test_solve_q_zero(capsys):
    code, out, _ = run(capsys, "solve", "--group", "A2", "--q-re", "0", "--q-im", "0")
    assert code == 1
    assert json.loads(out)["message"] == "no constant solution exists; nilpotent Higgs field on torus"


def test_solve_wrong_sign(capsys):
    code, out, _ = run(capsys, "solve", "--group", "G2", "--sign", "plus", "--grid", "16")
    rep = json.loads(out)
    assert code == 1 and "coercivity" in rep["message"] and rep["ritz_min"] < 0


def test_solve_bad_grid(capsys):
    code, _, _ = run(capsys, "solve", "--group", "A2", "--grid", "2")
    assert code == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cyclic_higgs.cli", "report", "--group", "A2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and '"exponents"' in proc.stdout
