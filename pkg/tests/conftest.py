import os
import random

import pytest
from hypothesis import settings

SEED = int(os.environ.get("EQUIRES_SEED", "20240611"))

settings.register_profile("equires", max_examples=40, deadline=None, derandomize=True)
settings.load_profile("equires")


@pytest.fixture
def rng():
    return random.Random(SEED)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
