import pytest

# criterion number -> True/False, filled in by test_acceptance.py
ACCEPTANCE = {}


@pytest.fixture
def criterion():
    def record(n, ok):
        ACCEPTANCE[n] = ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"acceptance criterion {n}: {'PASS' if ACCEPTANCE[n] else 'FAIL'}")
