import pytest

from spa.scenario import build_imputable_scsp, build_policy_scsp
from spa.scenario_parser import parse_scenario
from spa.scenarios import scenario_text


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call":
        return
    marker = item.get_closest_marker("criterion")
    if marker:
        status = "PASS" if report.passed else "FAIL"
        item.config._criterion_lines = getattr(item.config, "_criterion_lines", [])
        item.config._criterion_lines.append(
            f"ACCEPTANCE CRITERION {marker.args[0]}: {status}"
        )


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_criterion_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def kerberos():
    return parse_scenario(scenario_text("kerberos"), name="kerberos")


@pytest.fixture(scope="session")
def kerberos_policy(kerberos):
    return build_policy_scsp(kerberos)


@pytest.fixture(scope="session")
def kerberos_imputable(kerberos):
    return build_imputable_scsp(kerberos)


@pytest.fixture(scope="session")
def ns_lowe():
    return parse_scenario(scenario_text("ns_lowe"), name="ns_lowe")


@pytest.fixture(scope="session")
def ns_policy(ns_lowe):
    return build_policy_scsp(ns_lowe)


@pytest.fixture(scope="session")
def ns_imputable(ns_lowe):
    return build_imputable_scsp(ns_lowe)
