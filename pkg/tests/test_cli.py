import io
import subprocess
import sys

import pytest

from spa.cli import EXIT_ATTACK, EXIT_ERROR, EXIT_OK, main
from spa.scenarios import fuzzy_example_text, scenario_path, scenario_text


def run_cli(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture()
def kerberos_file():
    return str(scenario_path("kerberos"))


@pytest.fixture()
def ns_file():
    return str(scenario_path("ns_lowe"))


@pytest.fixture()
def quiet_file(tmp_path):
    text = scenario_text("kerberos")
    policy = text.split("phase trace")[0]
    trace = policy.split("phase policy")[1]
    (tmp_path / "quiet.spa").write_text(policy + "phase trace" + trace)
    return str(tmp_path / "quiet.spa")


def test_check_reports_attacks_and_exits_1(kerberos_file):
    code, out = run_cli("check", kerberos_file)
    assert code == EXIT_ATTACK
    assert "checking(agent(tgs))" in out
    assert "attack(authK, policy_level(traded_2), attack_level(traded_3))" in out


def test_check_trace_equal_to_policy_is_quiet(quiet_file):
    code, out = run_cli("check", quiet_file)
    assert code == EXIT_OK
    for line in out.splitlines():
        assert line.startswith("checking(agent(")


def test_check_principal_selection(kerberos_file):
    code, out = run_cli("check", kerberos_file, "--principal", "tgs")
    assert code == EXIT_ATTACK
    assert out.count("checking(agent(") == 1
    assert "checking(agent(tgs))" in out


def test_check_unknown_principal_is_a_usage_error(kerberos_file, capsys):
    code, _ = run_cli("check", kerberos_file, "--principal", "Z")
    assert code == EXIT_ERROR


def test_check_table_format(kerberos_file):
    code, out = run_cli("check", kerberos_file, "--format", "table")
    assert code == EXIT_ATTACK
    assert "principal" in out and "confidentiality" in out


def test_check_all_goals_adds_auth_lines(kerberos_file):
    code, out = run_cli("check", kerberos_file, "--goal", "all")
    assert code == EXIT_ATTACK
    assert "auth_attack(" in out


def test_auth_peer_agent_resolves_under_principal_filter(kerberos_file):
    code, out = run_cli(
        "check", kerberos_file, "--goal", "authentication", "--principal", "A"
    )
    assert code == EXIT_ATTACK
    assert "auth_attack(b, " in out  # peer B rendered by its agent atom


def test_policy_report_lists_closed_levels(kerberos_file):
    code, out = run_cli("policy", kerberos_file, "--principal", "A")
    assert code == EXIT_OK
    assert "authK : traded_1" in out
    assert "servK : traded_3" in out


def test_policy_report_authentication_headlines(kerberos_file):
    code, out = run_cli("policy", kerberos_file, "--goal", "authentication")
    assert code == EXIT_OK
    assert "(A with tgs) : traded_2" in out
    assert "(A with B) : traded_4" in out
    assert "(B with A) : traded_5" in out


def test_policy_full_includes_unknown_rows(kerberos_file):
    _, sparse = run_cli("policy", kerberos_file, "--principal", "C")
    _, full = run_cli("policy", kerberos_file, "--principal", "C", "--full")
    assert len(full.splitlines()) > len(sparse.splitlines())
    assert ": unknown" in full and ": unknown" not in sparse


def test_solve_fuzzy_example(tmp_path):
    path = tmp_path / "fuzzy.scsp"
    path.write_text(fuzzy_example_text())
    code, out = run_cli("solve", str(path))
    assert code == EXIT_OK
    assert "(a, a) -> 0.8" in out


def test_missing_file_is_an_error():
    code, _ = run_cli("check", "/nonexistent.spa")
    assert code == EXIT_ERROR


def test_parse_error_exits_2(tmp_path):
    bad = tmp_path / "bad.spa"
    bad.write_text("levels 4\nwormhole\n")
    code, _ = run_cli("check", str(bad))
    assert code == EXIT_ERROR


def test_profile_env_override(kerberos_file, monkeypatch):
    monkeypatch.setenv("SPA_PROFILE", "literal")
    code, out = run_cli("policy", kerberos_file, "--principal", "A")
    assert code == EXIT_OK
    assert "profile=literal" in out
    monkeypatch.setenv("SPA_PROFILE", "warped")
    code, _ = run_cli("policy", kerberos_file)
    assert code == EXIT_ERROR


def test_reports_are_deterministic(kerberos_file):
    first = run_cli("check", kerberos_file, "--goal", "all")
    second = run_cli("check", kerberos_file, "--goal", "all")
    assert first == second


def test_console_entry_point_runs(ns_file):
    proc = subprocess.run(
        [sys.executable, "-m", "spa.cli", "check", ns_file],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == EXIT_ATTACK
    assert "checking(agent(b))" in proc.stdout
