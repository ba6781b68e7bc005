import sys
from pathlib import Path

import pytest
from hypothesis import settings

from projqc.sweep import grid_specs

settings.register_profile("default", deadline=None)
settings.load_profile("default")

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def grid():
    return list(grid_specs(6, 5, 4))


@pytest.fixture(scope="session")
def small_grid():
    return list(grid_specs(4, 4, 3))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda x: int(x.split("] ")[1].split(".")[0])):
            terminalreporter.write_line(line)
