"""Command-line harness: sweeps, cloner reports, verify runs, exit codes."""

import json
import math
import subprocess
import sys

import pytest

from clonebound import bounds, cli

import _oracles as oracle


# ------------------------------------------------------------- number format


def test_format_number_conventions():
    assert cli.format_number(0.0) == "0"
    assert cli.format_number(1.0) == "1"
    assert cli.format_number(0.27639320225002103) == "0.276393202"
    assert cli.format_number(0.5) == "0.5"
    # scientific notation below 1e-4
    assert cli.format_number(1e-5) == "1.00000000e-05"
    assert cli.format_number(9.87654321e-7) == "9.87654321e-07"
    assert cli.format_number(2e-4) == "0.0002"


# -------------------------------------------------------------------- sweeps


def read_csv(path):
    text = path.read_bytes().decode("ascii")
    assert "\r" not in text  # LF endings only
    lines = text.strip().split("\n")
    return lines[0].split(","), [line.split(",") for line in lines[1:]]


def test_sweep_header_and_grid(tmp_path):
    out = tmp_path / "sweep.csv"
    spec = cli.SweepSpec(
        curve="re-lower", n_in=1, l_values=(3, 5), z_min=0.0, z_max=1.0,
        steps=5, out_path=str(out),
    )
    cli.run_sweep(spec)
    header, rows = read_csv(out)
    assert header == ["z", "L3", "L5"]
    assert [r[0] for r in rows] == ["0", "0.25", "0.5", "0.75", "1"]
    assert float(rows[2][1]) == pytest.approx(bounds.re_lower_bound(0.5, 1, 3), abs=1e-9)
    assert float(rows[4][2]) == pytest.approx(1 - math.sqrt(1 / 5), abs=1e-9)


def test_sweep_is_byte_stable(tmp_path):
    paths = []
    for name in ("a.csv", "b.csv"):
        out = tmp_path / name
        cli.main([
            "sweep", "--curve", "f-diff", "--n", "1", "--l", "3,5",
            "--z-min", "0.01", "--z-max", "0.99", "--steps", "11",
            "--out", str(out),
        ])
        paths.append(out.read_bytes())
    assert paths[0] == paths[1]


def test_sweep_cli_exit_codes(tmp_path):
    ok = cli.main([
        "sweep", "--curve", "re-lower", "--n", "1", "--l", "2",
        "--steps", "3", "--out", str(tmp_path / "x.csv"),
    ])
    assert ok == 0
    # usage errors exit 1
    assert cli.main(["sweep", "--curve", "bogus", "--n", "1", "--l", "2",
                     "--out", str(tmp_path / "y.csv")]) == 1
    assert cli.main(["sweep", "--curve", "re-lower", "--n", "1", "--l", "2",
                     "--z-min", "0.9", "--z-max", "0.1",
                     "--out", str(tmp_path / "y.csv")]) == 1
    assert cli.main(["sweep", "--curve", "f-diff", "--n", "1", "--l", "2",
                     "--z-min", "0", "--z-max", "0.9",
                     "--out", str(tmp_path / "y.csv")]) == 1
    assert cli.main(["sweep", "--curve", "re-lower", "--n", "1", "--l", "3,2",
                     "--out", str(tmp_path / "y.csv")]) == 1
    assert cli.main(["sweep", "--curve", "re-lower", "--n", "1", "--l", "2",
                     "--out", str(tmp_path / "no" / "dir" / "y.csv")]) == 1


# -------------------------------------------------------------------- cloner


def test_cloner_symmetric_document(capsys):
    assert cli.main(["cloner", "--z", "0.5", "--n", "1", "--l", "2",
                     "--kind", "symmetric"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "symmetric"
    assert doc["re"] == pytest.approx(oracle.RE_SYM_HALF_1_2, abs=1e-9)
    assert doc["re_reference"] == pytest.approx(oracle.RE_SYM_HALF_1_2, abs=1e-9)
    assert doc["ae_reference"] == pytest.approx(oracle.AE_SYM_HALF_1_2, abs=1e-9)
    assert doc["gram_residual"] < 1e-9
    assert doc["coplanarity_residual"] < 1e-9


def test_cloner_asymmetric_document(capsys):
    assert cli.main(["cloner", "--z", "0.5", "--n", "1", "--l", "2",
                     "--kind", "asymmetric"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["re"] == pytest.approx(oracle.RE_LOWER_HALF_1_2, abs=1e-9)
    assert doc["re_lower_bound"] == pytest.approx(oracle.RE_LOWER_HALF_1_2, abs=1e-9)
    assert abs(doc["re"] - doc["re_lower_bound"]) < 1e-9
    assert doc["ae"] == pytest.approx(oracle.AE_LOWER_HALF_1_2, abs=1e-9)
    # measured and closed-form reference are both always present
    for key in ("ae", "re", "ae_reference", "re_reference"):
        assert key in doc


def test_cloner_zero_split_equals_asymmetric(capsys):
    assert cli.main(["cloner", "--z", "0.5", "--n", "1", "--l", "2",
                     "--kind", "custom-split", "--split", "0"]) == 0
    split_doc = json.loads(capsys.readouterr().out)
    assert cli.main(["cloner", "--z", "0.5", "--n", "1", "--l", "2",
                     "--kind", "asymmetric", "--perfect", "phi"]) == 0
    asym_doc = json.loads(capsys.readouterr().out)
    for key in ("delta_phi", "delta_psi", "x_phi", "x_psi", "ae", "re"):
        assert split_doc[key] == asym_doc[key]


def test_cloner_json_file_matches_stdout(tmp_path, capsys):
    out = tmp_path / "doc.json"
    assert cli.main(["cloner", "--z", "0.4", "--n", "2", "--l", "5",
                     "--kind", "symmetric", "--json", str(out)]) == 0
    printed = json.loads(capsys.readouterr().out)
    assert json.loads(out.read_text()) == printed


def test_cloner_argument_errors(capsys):
    assert cli.main(["cloner", "--z", "1.0", "--n", "1", "--l", "2",
                     "--kind", "symmetric"]) == 1
    capsys.readouterr()
    assert cli.main(["cloner", "--z", "0.5", "--n", "1", "--l", "2",
                     "--kind", "custom-split"]) == 1
    capsys.readouterr()
    assert cli.main(["cloner", "--z", "0.5", "--n", "2", "--l", "2",
                     "--kind", "symmetric"]) == 1


# -------------------------------------------------------------------- verify


def test_verify_writes_report_and_exits_zero(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = cli.main(["verify", "--suite", "bounds", "--trials", "100",
                     "--seed", "9", "--report", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert set(doc) == {"reports"}
    (entry,) = doc["reports"]
    assert entry["suite"] == "bounds"
    assert entry["trials"] == 100
    assert entry["failures"] == 0
    assert entry["seed"] == 9
    assert "worst_margin" in entry
    assert "bounds" in capsys.readouterr().out


def test_verify_all_runs_every_suite(tmp_path):
    out = tmp_path / "report.json"
    code = cli.main(["verify", "--suite", "all", "--trials", "50",
                     "--seed", "1", "--report", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert [r["suite"] for r in doc["reports"]] == list(
        ("angles", "fidelity", "transition", "cloners", "bounds", "mixed")
    )


def test_verify_report_files_bit_identical(tmp_path):
    blobs = []
    for name in ("r1.json", "r2.json"):
        out = tmp_path / name
        assert cli.main(["verify", "--suite", "cloners", "--trials", "150",
                         "--seed", "42", "--report", str(out)]) == 0
        blobs.append(out.read_bytes())
    assert blobs[0] == blobs[1]


def test_verify_argument_errors():
    assert cli.main(["verify", "--suite", "nope", "--trials", "10"]) == 1
    assert cli.main(["verify", "--suite", "angles", "--trials", "0"]) == 1


def test_verify_exit_two_on_violation(monkeypatch, capsys):
    from clonebound.suites import SuiteReport

    def fake(names, trials, seed, dim=None):
        return [SuiteReport(suite=names[0], trials=trials, failures=3,
                            worst_margin=-0.5, seed=seed, wall_time=0.0)]

    monkeypatch.setattr(cli.suites, "run_suites", fake)
    assert cli.main(["verify", "--suite", "angles", "--trials", "10",
                     "--seed", "0"]) == 2


def test_verify_seed_from_environment(monkeypatch, tmp_path):
    out = tmp_path / "report.json"
    monkeypatch.setenv("CLONEBOUND_SEED", "123")
    assert cli.main(["verify", "--suite", "bounds", "--trials", "20",
                     "--report", str(out)]) == 0
    assert json.loads(out.read_text())["reports"][0]["seed"] == 123
    monkeypatch.setenv("CLONEBOUND_SEED", "not-a-number")
    assert cli.main(["verify", "--suite", "bounds", "--trials", "20"]) == 1


def test_verify_default_seed_without_environment(monkeypatch, tmp_path):
    out = tmp_path / "report.json"
    monkeypatch.delenv("CLONEBOUND_SEED", raising=False)
    assert cli.main(["verify", "--suite", "bounds", "--trials", "20",
                     "--report", str(out)]) == 0
    assert json.loads(out.read_text())["reports"][0]["seed"] == 42


# ------------------------------------------------------------ whole program


def test_module_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "clonebound", "cloner", "--z", "0.5",
         "--n", "1", "--l", "2", "--kind", "asymmetric"],
        capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["kind"] == "asymmetric"


def test_no_arguments_is_a_usage_error():
    assert cli.main([]) == 1
