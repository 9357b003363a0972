"""Shared fixtures.  The tests directory is importable (no __init__.py),
so oracle helpers live in oracles.py next to the test modules."""

import sys

import pytest


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Echo the acceptance verdict lines where capture cannot eat them."""
    mod = sys.modules.get("test_acceptance")
    verdicts = getattr(mod, "VERDICTS", None) if mod else None
    if verdicts:
        terminalreporter.section("acceptance criteria")
        for line in verdicts:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def small_interval_cache():
    """interval_stats is cheap at these sizes but called all over; share."""
    from sunitlab.prime_tools import interval_stats

    cache = {}

    def get(y):
        if y not in cache:
            cache[y] = interval_stats(y)
        return cache[y]

    return get
