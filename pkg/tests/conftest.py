import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_state(rng, num_atoms, num_levels=3):
    from superraman.hilbert import StateVector

    dim = num_levels**num_atoms
    return StateVector(num_atoms, num_levels, rng.normal(size=dim) + 1j * rng.normal(size=dim))


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
