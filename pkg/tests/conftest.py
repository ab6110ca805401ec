import sys
from pathlib import Path

import pytest

from sensbound.model import load_network

N1_PATH = Path(__file__).resolve().parents[1] / "src" / "sensbound" / "data" / "n1.json"


@pytest.fixture
def n1():
    return load_network(N1_PATH.read_text())


@pytest.fixture
def n1_path():
    return N1_PATH


def pytest_terminal_summary(terminalreporter):
    results = getattr(sys.modules.get("test_acceptance"), "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
