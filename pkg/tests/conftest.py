import pytest

from omegalab import Budget, Machine, enumerate_domain

# filled by tests/test_acceptance.py, echoed after the run
acceptance_lines = []


def pytest_terminal_summary(terminalreporter):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def machine():
    return Machine()


@pytest.fixture(scope="session")
def enum_at(machine):
    """Factory with a session cache: enum_at(L) is the exhaustive run at length L."""
    cache = {}

    def get(max_len, max_rounds=32):
        key = (max_len, max_rounds)
        if key not in cache:
            cache[key] = enumerate_domain(machine, Budget(max_len, max_rounds))
        return cache[key]

    return get


@pytest.fixture(scope="session")
def enum14(enum_at):
    return enum_at(14)


@pytest.fixture(scope="session")
def enum18(enum_at):
    return enum_at(18)
