"""Command-line behavior: outputs, exit codes, determinism."""

import json

import pytest

from jwalk import cli, reports


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_spectrum_json(capsys):
    code, out, _ = run_cli(capsys, "spectrum", "--n", "6", "--k", "2")
    assert code == 0
    doc = json.loads(out)
    assert [lv["eigenvalue"] for lv in doc["levels"]] == [8, 2, -2]
    assert [lv["multiplicity"] for lv in doc["levels"]] == [1, 5, 9]
    assert doc["schedule"]["t_run"] == 4  # floor(6*pi/4)


def test_spectrum_csv(capsys):
    code, out, _ = run_cli(capsys, "spectrum", "--n", "4", "--k", "2",
                           "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("level,eigenvalue,multiplicity")
    assert len(lines) == 4


def test_spectrum_degenerate_instance(capsys):
    code, _, err = run_cli(capsys, "spectrum", "--n", "2", "--k", "1")
    assert code == 2
    assert "degenerate instance" in err


def test_spectrum_requires_n_at_least_2k(capsys):
    code, _, err = run_cli(capsys, "spectrum", "--n", "5", "--k", "3")
    assert code == 2
    assert "requires n >= 2k" in err


def test_simulate_reduced_row_count_and_start(capsys):
    code, out, _ = run_cli(capsys, "simulate", "--n", "100", "--k", "2",
                           "--engine", "reduced", "--steps", "160")
    assert code == 0
    rows = reports.read_run_rows(out)
    assert len(rows) == 161
    assert rows[0].t == 0
    assert rows[0].p_succ == pytest.approx(1.0 / 4950.0, rel=1e-12)
    assert all(r.p_alt is None for r in rows)


def test_simulate_cross_engine_agreement(capsys):
    _, out_full, _ = run_cli(capsys, "simulate", "--n", "8", "--k", "2",
                             "--engine", "full", "--steps", "50")
    _, out_reduced, _ = run_cli(capsys, "simulate", "--n", "8", "--k", "2",
                                "--engine", "reduced", "--steps", "50")
    full = reports.read_run_rows(out_full)
    small = reports.read_run_rows(out_reduced)
    assert len(full) == len(small) == 51
    assert max(abs(f.p_succ - r.p_succ) for f, r in zip(full, small)) <= 1e-10
    assert all(f.p_alt is not None for f in full)


def test_simulate_capacity_exceeded(capsys):
    code, _, err = run_cli(capsys, "simulate", "--n", "40", "--k", "4",
                           "--engine", "full", "--steps", "2")
    assert code == 3
    assert "reduced engine" in err


def test_simulate_force_capacity_flag(capsys):
    code, out, _ = run_cli(capsys, "simulate", "--n", "8", "--k", "2",
                           "--engine", "full", "--steps", "3", "--force-capacity")
    assert code == 0
    assert len(reports.read_run_rows(out)) == 4


def test_simulate_default_steps_is_twice_t_run(capsys):
    code, out, _ = run_cli(capsys, "simulate", "--n", "100", "--k", "2")
    assert code == 0
    assert len(reports.read_run_rows(out)) == 2 * 78 + 1


def test_simulate_marked_flag(capsys):
    code, out, _ = run_cli(capsys, "simulate", "--n", "8", "--k", "2",
                           "--engine", "full", "--steps", "30",
                           "--marked", "3,7", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["marked"] == [3, 7]
    _, out_default, _ = run_cli(capsys, "simulate", "--n", "8", "--k", "2",
                                "--engine", "full", "--steps", "30",
                                "--format", "json")
    base = json.loads(out_default)
    assert base["marked"] == [1, 2]
    # vertex transitivity: same probability series either way
    a = [r["p_succ"] for r in doc["rows"]]
    b = [r["p_succ"] for r in base["rows"]]
    assert max(abs(x - y) for x, y in zip(a, b)) <= 1e-12


@pytest.mark.parametrize("marked", ["1", "1,2,3", "0,1", "1,9", "1,1", "a,b"])
def test_simulate_marked_flag_rejects(capsys, marked):
    code, _, err = run_cli(capsys, "simulate", "--n", "8", "--k", "2",
                           "--marked", marked, "--engine", "full", "--steps", "1")
    assert code == 2
    assert "--marked" in err


def test_simulate_stride(capsys):
    code, out, _ = run_cli(capsys, "simulate", "--n", "8", "--k", "2",
                           "--steps", "10", "--stride", "4")
    assert code == 0
    rows = reports.read_run_rows(out)
    assert [r.t for r in rows] == [0, 4, 8, 10]


def test_outputs_byte_identical_across_runs(capsys, tmp_path):
    args = ("simulate", "--n", "8", "--k", "2", "--engine", "full",
            "--steps", "50")
    _, first, _ = run_cli(capsys, *args)
    _, second, _ = run_cli(capsys, *args)
    assert first == second
    _, spec1, _ = run_cli(capsys, "spectrum", "--n", "10", "--k", "3")
    _, spec2, _ = run_cli(capsys, "spectrum", "--n", "10", "--k", "3")
    assert spec1 == spec2


def test_out_file_written(capsys, tmp_path):
    target = tmp_path / "series.csv"
    code, out, _ = run_cli(capsys, "simulate", "--n", "8", "--k", "2",
                           "--steps", "5", "--out", str(target))
    assert code == 0 and out == ""
    rows = reports.read_run_rows(target.read_text())
    assert len(rows) == 6


def test_sweep_convergence(capsys):
    code, out, _ = run_cli(capsys, "sweep", "--k", "2",
                           "--n-list", "100,400,1600")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,t_run,p_succ_at_t_run,abs_dev_from_half,t_opt,p_max"
    rows = [line.split(",") for line in lines[1:]]
    assert [int(r[1]) for r in rows] == [78, 314, 1256]
    deviations = [float(r[3]) for r in rows]
    assert deviations[0] > deviations[1] > deviations[2]


def test_sweep_rejects_empty_and_bad_n(capsys):
    code, _, err = run_cli(capsys, "sweep", "--k", "2", "--n-list", "")
    assert code == 2
    code, _, err = run_cli(capsys, "sweep", "--k", "3", "--n-list", "12,5")
    assert code == 2
    assert "requires n >= 2k" in err


def test_validate_pass(capsys):
    code, out, _ = run_cli(capsys, "validate", "--n", "4", "--k", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] is True
    assert len(doc["checks"]) == 20


def test_validate_impossible_tolerance(capsys):
    code, out, err = run_cli(capsys, "validate", "--n", "6", "--k", "2",
                             "--tol", "1e-30")
    assert code == 1
    assert json.loads(out)["passed"] is False
    assert "certification failed" in err


def test_validate_capacity(capsys):
    code, _, err = run_cli(capsys, "validate", "--n", "30", "--k", "3")
    assert code == 3
    assert "dense oracles refuse" in err


def test_usage_errors(capsys):
    assert run_cli(capsys, "simulate", "--n", "8")[0] == 2   # missing --k
    assert run_cli(capsys, "unknown-command")[0] == 2
    assert run_cli(capsys)[0] == 2
