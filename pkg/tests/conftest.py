"""Shared fixtures: coefficient tables and zero sets are expensive enough
that each is built once per session and reused across test modules."""

from __future__ import annotations

import pytest

from mertensq import build_tables, find_zeros, quad_field

# Lines registered by the acceptance tests; replayed after the run so the
# per-criterion PASS/FAIL verdicts are visible in the terminal summary.
_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _ACCEPTANCE_LINES:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


# ------------------------------ fields ------------------------------

@pytest.fixture(scope="session")
def qi_field():
    return quad_field(-4)


@pytest.fixture(scope="session")
def qi_tables(qi_field):
    # large enough for the Y=12 sampling window (e^12 ~ 162755)
    return build_tables(qi_field, 170000)


@pytest.fixture(scope="session")
def tab5_200k():
    return build_tables(quad_field(5), 200000)


# ------------------------------ zero sets ------------------------------

@pytest.fixture(scope="session")
def zqi600(qi_field):
    return find_zeros(qi_field, 600.0)


@pytest.fixture(scope="session")
def z4_20(qi_field):
    return find_zeros(qi_field, 20.0)


@pytest.fixture(scope="session")
def z12_200():
    return find_zeros(quad_field(12), 200.0)


@pytest.fixture(scope="session")
def z8_150():
    return find_zeros(quad_field(8), 150.0)


@pytest.fixture(scope="session")
def z5_300():
    return find_zeros(quad_field(5), 300.0)
