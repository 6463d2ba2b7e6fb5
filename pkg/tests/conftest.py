import pytest

from liestoch.acceptance import CRITERIA

_results = {}


def criterion_result(number):
    """Run an acceptance criterion once per session."""
    if number not in _results:
        _results[number] = CRITERIA[number]()
    return _results[number]


@pytest.fixture(scope="session")
def criterion():
    return criterion_result


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        terminalreporter.write_line(_results[number].summary_line())
