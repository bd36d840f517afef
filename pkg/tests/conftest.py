"""Collects acceptance outcomes and prints one PASS/FAIL line per criterion."""
import pytest

_results: dict[int, tuple[str, list[bool]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, label): acceptance criterion number and label")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, label = mark.args
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _results.setdefault(n, (label, []))[1].append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria (exact, zero tolerance)")
    for n in sorted(_results):
        label, oks = _results[n]
        status = "PASS" if oks and all(oks) else "FAIL"
        terminalreporter.write_line(f"[{status}] {n}. {label}")
