"""CLI surface: exit codes, text output, JSON determinism."""

import json

import pytest

from primework.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_sfm_text(capsys):
    code, out, _ = run(capsys, "sfm", "-f", "2^x-1", "--modulus", "82677")
    assert code == 0
    assert "x=11" in out
    assert "2047 (composite)" in out


def test_crt_analogy_text(capsys):
    code, out, _ = run(capsys, "crt-analogy", "-f", "x^3+1",
                       "--a", "9", "--b", "10")
    assert code == 0
    assert "FailsToLift" in out


def test_conditions_text(capsys):
    code, out, _ = run(capsys, "conditions", "-f", "x^3+1",
                       "--modulus", "90")
    assert code == 0
    assert "B: holds" in out
    assert "x=6 value=217" in out


def test_usage_error_without_function(capsys):
    code, _, err = run(capsys, "pi", "--limit", "50")
    assert code == 1
    assert "error" in err


def test_usage_error_bad_subcommand(capsys):
    code, _, err = run(capsys, "frobnicate")
    assert code == 1


def test_usage_error_no_subcommand(capsys):
    code, _, err = run(capsys, )
    assert code == 1


def test_validation_error_noncoprime_moduli(capsys):
    code, _, err = run(capsys, "crt-analogy", "-f", "x", "--a", "4",
                       "--b", "6")
    assert code == 1
    assert "ModuliNotCoprime" in err


def test_unknown_exit_code(capsys):
    # no twin values fit inside Z_{3!}^* and the scan cannot conclude
    code, out, _ = run(capsys, "factorial", "-s", "x; x+2", "--limit", "3")
    assert code == 2
    assert "no witness" in out


def test_json_envelope(capsys):
    code, out, _ = run(capsys, "sfm", "-f", "2^x-1", "--modulus", "82677",
                       "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema_version"] == 1
    assert doc["command"] == "sfm"
    assert doc["conclusive"] is True
    assert doc["elapsed_ms"] == 0
    assert doc["results"]["record"]["point"] == [11]
    assert doc["config"]["seed"] == 0


def test_json_big_integers_are_strings(capsys):
    code, out, _ = run(capsys, "fermat", "--limit", "8", "--json")
    assert code == 0
    doc = json.loads(out)
    records = doc["results"]["records"]
    f7 = next(r for r in records if r["x"] == 7)
    assert isinstance(f7["value"], str)
    assert int(f7["value"]) == 2**128 + 1
    f4 = next(r for r in records if r["x"] == 4)
    assert f4["value"] == 65537


def test_json_deterministic_across_runs(capsys):
    argv = ["verify-paper", "--json"]
    code1 = main(list(argv))
    out1 = capsys.readouterr().out
    code2 = main(list(argv))
    out2 = capsys.readouterr().out
    assert code1 == code2 == 0
    assert out1 == out2


def test_verify_paper_all_green(capsys):
    code, out, _ = run(capsys, "verify-paper")
    assert code == 0
    lines = out.strip().splitlines()
    assert all(line.startswith("ok") for line in lines[:-1])
    assert lines[-1].endswith("checks passed")


def test_seed_flag_reaches_config(capsys):
    code, out, _ = run(capsys, "phi", "-f", "x", "--modulus", "10",
                       "--seed", "7", "--json")
    assert code == 0
    assert json.loads(out)["config"]["seed"] == 7


def test_config_file_via_environment(capsys, tmp_path, monkeypatch):
    path = tmp_path / "bench.conf"
    path.write_text("seed = 9\nhorizon = 5000\n")
    monkeypatch.setenv("WORKBENCH_CONFIG", str(path))
    code, out, _ = run(capsys, "phi", "-f", "x", "--modulus", "10", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["config"]["seed"] == 9
    assert doc["config"]["horizon"] == 5000
    # flags beat the file
    code, out, _ = run(capsys, "phi", "-f", "x", "--modulus", "10",
                       "--seed", "3", "--json")
    assert json.loads(out)["config"]["seed"] == 3


def test_strict_positive_n_flag(capsys):
    code, out, _ = run(capsys, "ap", "--limit", "4", "--json")
    assert code == 0
    entries = json.loads(out)["results"]["table"]["entries"]
    assert [3, 3] in entries
    code, out, _ = run(capsys, "ap", "--limit", "4", "--strict-positive-n",
                       "--json")
    entries = json.loads(out)["results"]["table"]["entries"]
    assert [3, 7] in entries


def test_phi_exit_zero_and_payload(capsys):
    code, out, _ = run(capsys, "phi", "-s", "x; x+2", "--modulus", "15",
                       "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["results"]["result"]["count"] == 2
    assert doc["results"]["result"]["exact"] is True


def test_density_dlvp_branch(capsys):
    code, out, _ = run(capsys, "density", "--a", "1", "--b", "4",
                       "--limit", "10000")
    assert code == 0
    assert "1 mod 4" in out


def test_help_exits_zero(capsys):
    code, _, _ = run(capsys, "--help")
    assert code == 0
