"""The command-line surface: values, formats, exit codes."""
import json
import subprocess
import sys

import pytest

from phik.cli import main


def run_cli(*argv):
    return main(list(argv))


def test_eval_phi_k(capsys):
    assert run_cli("eval", "phi-k", "--k", "2", "--n", "15") == 0
    assert capsys.readouterr().out.strip() == "24"
    assert run_cli("eval", "phi-k", "--k", "2", "--n", "4") == 0
    assert capsys.readouterr().out.strip() == "0"


def test_eval_g_k(capsys):
    assert run_cli("eval", "g-k", "--k", "2", "--n", "4") == 0
    assert capsys.readouterr().out.strip() == "0"
    assert run_cli("eval", "g-k", "--k", "2", "--n", "6") == 0
    assert capsys.readouterr().out.strip() == "28"


def test_eval_json_uses_decimal_strings(capsys):
    # phi_6(10**6 + 3) overflows a double; JSON must carry it as a string
    assert run_cli("eval", "phi-k", "--k", "6", "--n", "1000003", "--format", "json") == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["k"] == "6" and payload["n"] == "1000003"
    value = int(payload["value"])
    assert value == (1000002 * (1000002**6 - 1)) // 1000003
    assert isinstance(payload["value"], str)


def test_eval_n_k_and_recursion(capsys):
    assert run_cli("eval", "n-k", "--k", "2", "--n", "15", "--d", "3", "--delta", "1") == 0
    assert capsys.readouterr().out.strip() == "16"
    assert (
        run_cli(
            "eval", "n-k", "--k", "2", "--n", "15", "--d", "3", "--delta", "1",
            "--method", "recursion",
        )
        == 0
    )
    assert capsys.readouterr().out.strip() == "16"


def test_eval_jordan(capsys):
    assert run_cli("eval", "jordan", "--k", "2", "--n", "2") == 0
    assert capsys.readouterr().out.strip() == "3"


def test_eval_phi_k_nm_domain_error(capsys):
    assert run_cli("eval", "phi-k-nm", "--k", "2", "--n", "15", "--m", "4") == 2
    assert "divisor" in capsys.readouterr().err


def test_eval_k0_rejected(capsys):
    assert run_cli("eval", "phi-k", "--k", "0", "--n", "5") == 2


def test_oracle_phi_k(capsys):
    assert run_cli("oracle", "phi-k", "--k", "2", "--n", "15") == 0
    assert capsys.readouterr().out.strip() == "24"


def test_oracle_budget_refusal(capsys):
    assert run_cli("oracle", "phi-k", "--k", "3", "--n", "50", "--budget", "1000") == 3
    assert "budget" in capsys.readouterr().err


def test_oracle_menon_lhs(capsys):
    assert run_cli("oracle", "menon-lhs", "--k", "2", "--n", "3", "--f", "id") == 0
    assert capsys.readouterr().out.strip() == "4"


def test_verify_menon_passes(capsys):
    assert run_cli("verify", "menon", "--k-max", "2", "--n-max", "15", "--f", "id") == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "failures=0" in out


def test_verify_menon_json_report(capsys):
    assert (
        run_cli(
            "verify", "menon", "--k-max", "2", "--n-max", "10",
            "--f", "tau", "--format", "json",
        )
        == 0
    )
    payload = json.loads(capsys.readouterr().out)
    assert payload["ok"] is True
    assert payload["checked"] == "20"
    assert payload["failures"] == []


def test_verify_corrupted_table_fails_with_witness(tmp_path, capsys):
    f_table = {str(d): d for d in range(1, 13)}
    mu_table = {str(d): _phi(d) for d in range(1, 13)}
    mu_table["6"] = 99  # corrupted closed-form side
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"f": f_table, "mu_f": mu_table}))
    code = run_cli(
        "verify", "menon", "--k-max", "2", "--n-max", "12", "--f", f"table:{path}"
    )
    out = capsys.readouterr().out
    assert code == 1
    assert "FAIL" in out and "n=6" in out and "lhs=" in out and "rhs=" in out


def _phi(d):
    from phik import euler_phi

    return euler_phi(d)


def test_verify_lemmas(capsys):
    assert run_cli("verify", "lemmas", "--n-max", "12", "--k-max", "2") == 0
    out = capsys.readouterr().out
    assert "lemmas" in out and "n_k_machinery" in out and "PASS" in out


def test_verify_sita_ramaiah(capsys):
    assert run_cli("verify", "sita-ramaiah", "--n-max", "20") == 0
    assert "PASS" in capsys.readouterr().out


def test_verify_nageswara_rao(capsys):
    assert run_cli("verify", "nageswara-rao", "--k-max", "2", "--n-max", "12") == 0
    assert "PASS" in capsys.readouterr().out


def test_verify_partial_budget_exit(capsys):
    code = run_cli(
        "verify", "menon", "--k-max", "3", "--n-max", "12", "--budget", "1000"
    )
    out = capsys.readouterr().out
    assert code == 3
    assert "skipped" in out and "partial" in out


def test_sum_both_methods(capsys):
    assert run_cli("sum", "phi-k", "--k", "2", "--x", "10", "--method", "both") == 0
    assert capsys.readouterr().out.strip() == "63"


def test_sum_json(capsys):
    assert (
        run_cli("sum", "phi-k", "--k", "3", "--x", "20", "--format", "json") == 0
    )
    payload = json.loads(capsys.readouterr().out)
    assert payload["value"] == "14062"


def test_sum_usage_error_on_empty_range(capsys):
    assert run_cli("sum", "phi-k", "--k", "2", "--x", "0") == 2


def test_constant_json(capsys):
    assert run_cli("constant", "--k", "2", "--prime-bound", "10000", "--format", "json") == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["k"] == "2" and payload["prime_bound"] == "10000"
    assert payload["lo"] <= 0.286747 <= payload["hi"]
    assert payload["width"] == payload["hi"] - payload["lo"]


def test_constant_rejects_k1(capsys):
    assert run_cli("constant", "--k", "1", "--prime-bound", "10000") == 2


def test_error_table_csv(capsys):
    assert run_cli("error-table", "--k", "2", "--x-grid", "10,100", "--prime-bound", "10000") == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[0] == "x,sum,main_term_lo,main_term_hi,delta,normalized_ratio"
    assert lines[1].startswith("10,63,") and lines[2].startswith("100,91083,")


def test_error_table_out_file(tmp_path, capsys):
    target = tmp_path / "table.csv"
    assert (
        run_cli(
            "error-table", "--k", "2", "--x-grid", "10",
            "--prime-bound", "10000", "--out", str(target),
        )
        == 0
    )
    assert target.read_text().startswith("x,sum,")


def test_csv_rejected_where_undefined(capsys):
    assert run_cli("eval", "phi-k", "--k", "2", "--n", "15", "--format", "csv") == 2


def test_missing_table_file(capsys):
    assert run_cli("oracle", "menon-lhs", "--k", "1", "--n", "4", "--f", "table:/nonexistent.json") == 2


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "phik.cli", "eval", "phi-k", "--k", "2", "--n", "15"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "24"
