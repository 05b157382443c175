from __future__ import annotations

import pytest

from polargrass.fields import make_field

# filled by tests/test_acceptance.py, printed once at the end of the session
ACCEPTANCE_LINES: dict[str, str] = {}


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line for a criterion; it is printed in the terminal summary."""

    def record(key: str, ok: bool, detail: str) -> None:
        line = f"criterion {key}: {'PASS' if ok else 'FAIL'} - {detail}"
        ACCEPTANCE_LINES[key] = line
        print(line)

    return record


@pytest.fixture
def gf2():
    return make_field(2)


@pytest.fixture
def gf3():
    return make_field(3)


@pytest.fixture
def gf4():
    return make_field(2, 2)


@pytest.fixture
def gf9():
    return make_field(3, 2)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda s: [int(x) if x.isdigit() else x
                                                        for x in s.replace(".", " ").split()]):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
