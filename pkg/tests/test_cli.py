"""Command-line interface: envelopes, exit codes, determinism."""
from __future__ import annotations

import json
import subprocess
import sys

import pytest

from resolvend.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_pairing_json_envelope(capsys):
    code, out = run_cli(capsys, "pairing", "--group", "3")
    assert code == 0
    data = json.loads(out)
    assert set(data) == {"command", "params", "result", "status"}
    assert data["command"] == "pairing"
    assert data["status"] == "ok"
    assert data["params"]["group"] == "3"
    result = data["result"]
    assert result["characters"] == ["0", "1", "2"]
    assert result["elements"] == ["0", "1", "2"]
    assert result["matrix"][1][1] == "1/3"
    assert result["matrix"][1][2] == "-1/3"
    assert result["matrix"][0] == ["0", "0", "0"]


def test_pairing_csv_is_raw(capsys):
    code, out = run_cli(capsys, "pairing", "--group", "3", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "character,0,1,2"
    assert len(lines) == 4
    assert not out.lstrip().startswith("{")


def test_kernel_basis(capsys):
    code, out = run_cli(capsys, "kernel-basis", "--group", "3,3")
    data = json.loads(out)
    assert code == 0
    assert data["result"]["lattice_index"] == 9
    assert len(data["result"]["vectors"]) == 9


def test_theta_integral_and_not(capsys):
    code, out = run_cli(capsys, "theta", "--group", "3", "--psi", "1:3")
    data = json.loads(out)
    assert code == 0
    result = data["result"]
    assert result["integral"] and result["det_trivial"] and result["in_kernel"]
    assert result["theta"]["1"] == "1"

    code, out = run_cli(capsys, "theta", "--group", "3", "--psi", "1:1")
    data = json.loads(out)
    assert code == 0  # the command reports; non-integrality is not a failure
    result = data["result"]
    assert not result["integral"] and not result["det_trivial"]
    assert result["theta"]["1"] == "1/3"


def test_different(capsys):
    code, out = run_cli(capsys, "different", "--filtration", "3,3,1")
    data = json.loads(out)
    assert code == 0
    assert data["result"] == {"orders": [3, 3, 1], "v_D": 4, "v_A": -2,
                              "weakly_ramified": True,
                              "abelian_filtration_ok": True}
    # odd different valuation reports a null square-root entry
    code, out = run_cli(capsys, "different", "--filtration", "2")
    data = json.loads(out)
    assert code == 0
    assert data["result"]["v_D"] == 1
    assert data["result"]["v_A"] is None


def test_tame_gen(capsys):
    code, out = run_cli(capsys, "tame-gen", "--group", "3", "--e", "3",
                        "--q", "7", "--s", "1")
    data = json.loads(out)
    assert code == 0
    assert data["status"] == "ok"
    result = data["result"]
    assert result["certificate"]["ok"]
    assert result["inversion_identity"]
    assert result["basis_change_unit"]
    assert all(row["matches_pi_power"] for row in result["resolvents"])
    assert len(result["generator"]) == 3


def test_wild_verify(capsys):
    code, out = run_cli(capsys, "wild-verify", "--p", "3")
    data = json.loads(out)
    assert code == 0
    result = data["result"]
    assert all(prop["holds"] for prop in result["propositions"])
    statements = {prop["statement"] for prop in result["propositions"]}
    assert len(statements) == 6


def test_suite_minimal(capsys):
    code, out = run_cli(capsys, "suite", "--max-order", "9", "--p", "3",
                        "--e", "3", "--checks", "07,09")
    data = json.loads(out)
    assert code == 0
    assert data["status"] == "ok"
    assert data["result"]["counts"]["fail"] == 0


def test_suite_mutation_exit_code(capsys):
    code, out = run_cli(capsys, "suite", "--checks", "04", "--e", "3",
                        "--mutate", "pairing-sign-flip")
    data = json.loads(out)
    assert code == 1
    assert data["status"] == "fail"
    assert data["result"]["counts"]["fail"] > 0


def test_error_envelope_and_exit_2(capsys):
    code, out = run_cli(capsys, "suite", "--max-order", "100")
    data = json.loads(out)
    assert code == 2
    assert data["status"] == "error"
    assert "error" in data["result"]


def test_domain_error_exit_2(capsys):
    # a tame-gen whose degree does not divide q - 1
    code, out = run_cli(capsys, "tame-gen", "--group", "5", "--e", "5",
                        "--q", "7", "--s", "1")
    data = json.loads(out)
    assert code == 2
    assert data["status"] == "error"


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["pairing"])  # missing --group
    assert exc.value.code == 2


def test_byte_determinism(capsys):
    _, first = run_cli(capsys, "suite", "--checks", "09")
    _, second = run_cli(capsys, "suite", "--checks", "09")
    assert first == second


def test_console_script_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "resolvend.cli", "different", "--filtration", "5"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    data = json.loads(proc.stdout)
    assert data["result"]["v_D"] == 4
    assert data["result"]["v_A"] == -2
