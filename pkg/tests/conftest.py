import pytest

# criterion number -> (passed, one-line summary), filled by test_acceptance
ACCEPTANCE: dict = {}


@pytest.fixture
def criterion():
    def record(num, passed, summary):
        ACCEPTANCE[str(num)] = (passed, summary)
        line = f"CRITERION {num}: {'PASS' if passed else 'FAIL'} - {summary}"
        print(line)
        assert passed, line
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        passed, summary = ACCEPTANCE[num]
        terminalreporter.write_line(f"CRITERION {num}: {'PASS' if passed else 'FAIL'} - {summary}")
