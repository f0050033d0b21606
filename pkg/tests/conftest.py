"""Suite-wide config: deterministic hypothesis runs, and one PASS/FAIL line
per acceptance criterion in the terminal summary."""

from hypothesis import settings

settings.register_profile("deterministic", derandomize=True)
settings.load_profile("deterministic")

_acceptance_results = []


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1].removeprefix("test_").replace("_", "-")
    verdict = "PASS" if report.passed else "FAIL"
    _acceptance_results.append(f"ACCEPTANCE {name}: {verdict} ({report.duration:.2f}s)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _acceptance_results:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_results:
            terminalreporter.write_line(line)
