import pytest

from hofib.corpus import generate_corpus


@pytest.fixture(scope="session")
def corpus():
    return generate_corpus(0)


def by_name(items, name):
    for x in items:
        if x.name == name:
            return x
    raise KeyError(name)


_CRITERIA = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" in report.nodeid and (report.when == "call" or report.failed):
        name = report.nodeid.split("::")[-1][len("test_criterion_"):]
        num, _, what = name.partition("_")
        if report.when == "call" or num not in _CRITERIA:
            _CRITERIA[num] = (what.replace("_", " "), "PASS" if report.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA, key=int):
        what, verdict = _CRITERIA[num]
        terminalreporter.write_line(f"criterion {int(num):2d}: {verdict}  {what}")
