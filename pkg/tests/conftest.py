import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from keylift.index import build_index  # noqa: E402
from keylift.text import tokenize_document  # noqa: E402


def make_index(*texts):
    return build_index(tokenize_document(f"t{i}", t) for i, t in enumerate(texts))


@pytest.fixture
def abc_index():
    return make_index("a b", "a c", "b c", "d")


_criteria: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(text): acceptance criterion covered by the test")


def pytest_runtest_logreport(report):
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        marker = _criterion_text(report)
        if marker:
            _criteria[marker] = "PASS" if report.outcome == "passed" else "FAIL"


def _criterion_text(report):
    return getattr(report, "criterion", None)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker:
        report.criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for text, status in _criteria.items():
        terminalreporter.write_line(f"{status}  {text}")
