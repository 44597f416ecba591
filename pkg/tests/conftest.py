import os
import sys
import time

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

from lcitor.ring import GF, QQ, Lex, PolyRing  # noqa: E402

ACCEPTANCE_LINES = []
SUITE_BUDGET = 300.0
_START = time.perf_counter()

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
SCENARIOS = os.path.join(ROOT, "scenarios")


@pytest.fixture
def R2():
    return PolyRing(QQ, ["x", "y"])


@pytest.fixture
def R3():
    return PolyRing(QQ, ["x", "y", "z"])


@pytest.fixture
def R4():
    return PolyRing(QQ, ["x", "y", "z", "w"])


@pytest.fixture
def R2lex():
    return PolyRing(QQ, ["x", "y"], Lex())


@pytest.fixture
def F2():
    return PolyRing(GF(2), ["x", "y"])


@pytest.fixture
def scenario_dir():
    return SCENARIOS


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    elapsed = time.perf_counter() - _START
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
    ok = elapsed < SUITE_BUDGET
    terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion 9 (suite time): "
                                f"whole session {elapsed:.1f}s < {SUITE_BUDGET:.0f}s")


def pytest_sessionfinish(session, exitstatus):
    if ACCEPTANCE_LINES and time.perf_counter() - _START >= SUITE_BUDGET and exitstatus == 0:
        session.exitstatus = 1
