import pytest
from hypothesis import settings

from autsys import AutonomousSystem, hex6, p_n, path_system

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def P3():
    return p_n(3)


@pytest.fixture
def P4():
    return path_system(["a", "x", "y", "b"])


@pytest.fixture
def CHAIN2():
    return AutonomousSystem.from_sets(["p", "q"], [[], ["p"], ["p", "q"]])


@pytest.fixture
def HEX6():
    return hex6()


def pytest_terminal_summary(terminalreporter, config):
    from test_acceptance import ACCEPTANCE_KEY

    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
