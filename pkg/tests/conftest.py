import pytest

from postedit.fixtures import load_fixture

ACCEPTANCE_RESULTS = {}


@pytest.fixture(scope="session")
def en_fixture():
    return load_fixture("en")


@pytest.fixture(scope="session")
def fr_fixture():
    return load_fixture("fr")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        status, desc = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"criterion {key}: {status}  {desc}")
