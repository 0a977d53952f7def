import re

_criteria: dict[int, bool] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion_(\d+)", report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    if report.when == "call" or report.failed:
        _criteria[n] = _criteria.get(n, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for n in sorted(_criteria):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if _criteria[n] else 'FAIL'}")
