import json
import subprocess
import sys

import pytest

from ospbranch import cli
from ospbranch.cli import EXIT_CAP, EXIT_FAIL, EXIT_INPUT, EXIT_OK, run


def no_floats(obj) -> bool:
    if isinstance(obj, float):
        return False
    if isinstance(obj, dict):
        return all(no_floats(v) for v in obj.values())
    if isinstance(obj, list):
        return all(no_floats(v) for v in obj)
    return True


def run_json(*argv):
    status, out = run([*argv, "--format", "json"])
    return status, json.loads(out)


def test_verify_small_sector():
    status, rec = run_json("verify", "--m", "2", "--n", "4", "--max-N", "1", "--spins", "1")
    assert status == EXIT_OK
    assert [r["dimension"] for r in rec["results"]] == [1, 6]
    assert set(rec) == {"config", "results", "checks", "provenance"}
    assert rec["config"]["m"] == 2 and rec["config"]["command"] == "verify"
    assert any(c["status"] == "expected-fail" for c in rec["checks"])


@pytest.mark.parametrize("argv", [
    ["verify", "--m", "2", "--n", "3"], ["verify", "--m", "5", "--n", "4"], ["exceptional", "--n", "3"],
    ["exceptional", "--m", "2", "--n", "4"], ["casimir", "--m", "2", "--n", "4", "--lambda", "0,1|2,1"],
    ["casimir", "--m", "2", "--n", "4", "--lambda", "a|b"], ["branch", "--m", "2", "--n", "4", "--a", "1"],
    ["casimir", "--m", "2", "--n", "4", "--a", "1", "--b", "1", "--c", "0"],
    ["verify", "--m", "2", "--n", "4", "--N", "1", "--max-N", "2"],
])
def test_input_errors_exit_2(argv):
    status, out = run(argv)
    assert status == EXIT_INPUT and out.startswith("error:")


def test_argparse_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        run(["verify", "--m", "two"])
    assert exc.value.code == 2


def test_dimension_cap_exit_3():
    status, out = run(["verify", "--m", "4", "--n", "4", "--N", "4", "--dim-cap", "2000"])
    assert status == EXIT_CAP
    assert "m=4, n=4, spins=2, N=4" in out and "2816" in out


def test_failed_check_exit_1(monkeypatch):
    monkeypatch.setattr(cli, "casimir_closed_form", lambda a, b, spec: 1234)
    status, rec = run_json("casimir", "--m", "2", "--n", "4", "--a", "1", "--b", "1")
    assert status == EXIT_FAIL
    (chk,) = rec["checks"]
    assert chk["status"] == "FAIL" and chk["witness"] == {"closed_form": 1234, "from_weight": -9}


def test_casimir_examples():
    assert run_json("casimir", "--m", "2", "--n", "4", "--a", "1", "--b", "1")[1]["results"][0]["casimir"] == -9
    assert run_json("casimir", "--m", "4", "--n", "4", "--a", "1", "--b", "0")[1]["results"][0]["casimir"] == 0
    status, rec = run_json("casimir", "--m", "2", "--n", "4", "--lambda", "0,0|2,1", "--a", "1", "--b", "1")
    assert status == EXIT_OK
    assert rec["results"][0]["casimir"] == rec["results"][1]["casimir"] == -9
    assert any(c["name"] == "weight and label entry paths agree" for c in rec["checks"])


def test_casimir_gap_and_scan(tmp_path):
    status, rec = run_json("casimir", "--m", "2", "--n", "4", "--a", "1", "--b", "1",
                           "--c", "0", "--d", "0", "--e", "1", "--f", "0")
    assert status == EXIT_OK and rec["results"][1]["gap"] == 6
    status, rec = run_json("casimir", "--m", "4", "--n", "4", "--a", "1", "--b", "0", "--scan",
                           "--plot-dir", str(tmp_path))
    assert status == EXIT_OK and rec["results"][1]["min_gap"] == 0
    assert (tmp_path / "gap_m4_n4_a1_b0.png").stat().st_size > 0


def test_branch_table():
    status, rec = run_json("branch", "--m", "2", "--n", "4", "--a", "2", "--b", "1")
    assert status == EXIT_OK
    assert [r["label"] for r in rec["results"]] == [[0, 1], [1, 1], [2, 1]]
    assert [r["highest_weight"] for r in rec["results"]] == ["(0|1,0)", "(0|2,1)", "(0|3,2)"]
    assert all(r["status"] == "predicted" for r in rec["results"])


def test_branch_verify(tmp_path):
    status, rec = run_json("branch", "--m", "2", "--n", "4", "--a", "0", "--b", "2", "--verify",
                           "--plot-dir", str(tmp_path))
    assert status == EXIT_OK
    (row,) = rec["results"]
    assert row["status"] == "verified" and row["dimension"] == 19
    assert (tmp_path / "branch_m2_n4_a0_b2.png").exists()
    status, rec = run_json("branch", "--m", "4", "--n", "4", "--a", "1", "--b", "0", "--verify")
    assert status == EXIT_OK
    (row,) = rec["results"]
    assert row["status"] == "exceptional" and row["dimension"] == 32
    assert len(row["composition_factors"]) == 3


def test_exceptional_command():
    status, rec = run_json("exceptional", "--n", "4")
    assert status == EXIT_OK
    (res,) = rec["results"]
    assert res["chain_dims"] == [32, 31, 1, 0] and res["factor_dims"] == [1, 30, 1]


def test_text_output_lists_checks():
    status, out = run(["casimir", "--m", "2", "--n", "4", "--a", "1", "--b", "1"])
    assert status == EXIT_OK
    assert "[pass] closed form agrees" in out and out.rstrip().endswith("all passed")


def test_config_file_and_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\nm = 2\nn = 4\na = 1\nb = 1\nformat = json\n")
    status, out = run(["casimir", "--config", str(cfg)])
    assert status == EXIT_OK and json.loads(out)["results"][0]["casimir"] == -9
    status, out = run(["casimir", "--config", str(cfg), "--m", "4", "--n", "4", "--b", "0"])
    assert json.loads(out)["results"][0]["casimir"] == 0
    cfg.write_text("bogus = 1\n")
    assert run(["casimir", "--config", str(cfg)])[0] == EXIT_INPUT
    cfg.write_text("format = yaml\n")
    assert run(["casimir", "--config", str(cfg)])[0] == EXIT_INPUT


def test_cache_dir_from_env(tmp_path, monkeypatch):
    monkeypatch.setenv("OSPBRANCH_CACHE_DIR", str(tmp_path))
    status, out = run(["exceptional", "--n", "4", "--format", "json"])
    assert status == EXIT_OK
    assert list((tmp_path / "report").rglob("*.json"))
    assert list((tmp_path / "operator").rglob("*.json"))
    # a warm cache reproduces the same report
    assert run(["exceptional", "--n", "4", "--format", "json"]) == (status, out)


def test_reports_are_deterministic_and_exact():
    argv = [sys.executable, "-m", "ospbranch.cli", "branch", "--m", "2", "--n", "4", "--a", "1", "--b", "1",
            "--verify", "--format", "json"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second
    assert no_floats(json.loads(first))
