import time

import pytest

SUITE_BUDGET_SECONDS = 300

_results = []
_started = time.perf_counter()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _results.append((mark.args[0], mark.args[1], rep.passed, rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.write_sep("=", "acceptance criteria")
    for number, text, passed, seconds in sorted(_results):
        tr.write_line(f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {text}  ({seconds:.1f}s)")
    total = time.perf_counter() - _started
    verdict = "PASS" if total < SUITE_BUDGET_SECONDS else "FAIL"
    tr.write_line(f"suite time  : {verdict}  {total:.1f}s (limit {SUITE_BUDGET_SECONDS}s)")
