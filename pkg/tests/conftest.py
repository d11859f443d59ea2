"""Terminal summary lines for the acceptance suite."""

_results: dict[int, tuple[str, str]] = {}


def record_acceptance(n: int, detail: str) -> None:
    _results[n] = ("PASS", detail)


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    if name.startswith("test_criterion_"):
        n = int(name.split("_")[2])
        if report.failed:
            _results[n] = ("FAIL", "")
        elif n not in _results:
            _results[n] = ("PASS", "")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _results:
        return
    terminalreporter.section("acceptance")
    for n in sorted(_results):
        status, detail = _results[n]
        line = f"ACCEPTANCE {n}: {status}"
        if detail:
            line += f" {detail}"
        terminalreporter.write_line(line)
