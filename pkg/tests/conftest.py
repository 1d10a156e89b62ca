import pytest

_results: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    key = mark.args[0]
    title = mark.args[1]
    ok = rep.passed or (rep.when == "setup" and not rep.failed)
    prev = _results.get(key, (title, True))
    _results[key] = (title, prev[1] and ok and not rep.skipped)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_results):
        title, ok = _results[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key}: {title}")
