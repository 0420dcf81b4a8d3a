import numpy as np
import pytest

_CRITERIA: dict[str, dict] = {}
_NODE_CODE: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(code, title): acceptance criterion covered by a test")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            code, title = mark.args
            _CRITERIA.setdefault(code, {"title": title, "outcomes": []})
            _NODE_CODE[item.nodeid] = code


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    code = _NODE_CODE.get(report.nodeid)
    if code is not None:
        _CRITERIA[code]["outcomes"].append((report.nodeid, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for code in sorted(_CRITERIA, key=lambda c: int(c[1:])):
        entry = _CRITERIA[code]
        outcomes = entry["outcomes"]
        if not outcomes:
            status = "NOT RUN"
        elif all(o == "passed" for _, o in outcomes):
            status = "PASS"
        else:
            status = "FAIL"
        failed = [n.split("::")[-1] for n, o in outcomes if o != "passed"]
        tail = f"  (failing: {', '.join(failed)})" if failed else ""
        terminalreporter.write_line(f"[{status}] {code}: {entry['title']}{tail}")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)

