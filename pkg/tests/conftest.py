import numpy as np
import pytest

from subprob import data_path
from subprob.sep import load_sep

# acceptance criteria append (name, passed, detail) here; printed at the end
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_LINES:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")


@pytest.fixture
def rng():
    return np.random.default_rng(20021)


@pytest.fixture
def wood():
    return load_sep(data_path("wood.sep"))
