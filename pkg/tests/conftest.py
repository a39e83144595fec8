import random

import pytest

from pachner4.families import family


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def p0():
    return family("P", 0)


def pytest_terminal_summary(terminalreporter):
    try:
        from tests import test_acceptance
    except ImportError:
        try:
            import test_acceptance
        except ImportError:
            return
    lines = test_acceptance.summary_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
