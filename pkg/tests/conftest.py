import pytest

from rpda.core import word
from rpda.harness import example_a1

# results collected by test_acceptance.py, printed once at the end of the session
ACCEPTANCE_RESULTS = {}


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_RESULTS


@pytest.fixture
def a1():
    return example_a1()


@pytest.fixture
def mirror_word():
    return word(("a", "d0"), ("b", "d1"), ("b", "d2"), ("b", "d2"), ("b", "d1"), ("a", "d0"))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, text = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {n}. {text}")
