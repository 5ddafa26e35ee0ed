from __future__ import annotations

import sys
from pathlib import Path

import pytest

from coxkl.coxeter import load_system

ROOT = Path(__file__).resolve().parent.parent
SYSTEMS = ROOT / "systems"
sys.path.insert(0, str(Path(__file__).resolve().parent))


@pytest.fixture(scope="session")
def A1():
    return load_system(SYSTEMS / "a1.json")


@pytest.fixture(scope="session")
def A2():
    return load_system(SYSTEMS / "a2.json")


@pytest.fixture(scope="session")
def A3():
    return load_system(SYSTEMS / "a3.json")


@pytest.fixture(scope="session")
def B2():
    return load_system(SYSTEMS / "b2.json")


@pytest.fixture(scope="session")
def I2inf():
    return load_system(SYSTEMS / "i2inf.json")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number].line())
