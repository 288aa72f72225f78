from __future__ import annotations

import pytest

# criterion id -> (passed, one-line detail); filled by tests/test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}
ACCEPTANCE_INFO: list[str] = []


@pytest.fixture
def acceptance_record():
    def record(criterion: int, passed: bool, detail: str) -> None:
        ACCEPTANCE[criterion] = (passed, detail)
        print(f"criterion {criterion}: {'PASS' if passed else 'FAIL'} - {detail}")

    return record


@pytest.fixture
def acceptance_info():
    def info(line: str) -> None:
        ACCEPTANCE_INFO.append(line)
        print(f"  info: {line}")

    return info


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if passed else 'FAIL'} - {detail}")
    for line in ACCEPTANCE_INFO:
        terminalreporter.write_line(f"  info: {line}")
