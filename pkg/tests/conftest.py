import pytest

from qfposet import QFSequence, fibonacci, lucas


@pytest.fixture
def fib():
    return fibonacci()


@pytest.fixture
def luc():
    return lucas()


@pytest.fixture
def tri():
    return QFSequence(3, [1, 2, 4])


@pytest.fixture
def quad():
    return QFSequence(4, [1, 2, 4, 8])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in RESULTS.items():
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {name}: {detail}")
