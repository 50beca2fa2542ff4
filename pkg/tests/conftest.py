from __future__ import annotations

import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from msrcode.gf import get_field  # noqa: E402
from msrcode.mds import search_rho  # noqa: E402
from msrcode.params import derive_params  # noqa: E402

DESK_TRIPLES = [(4, 2, 3), (5, 2, 3), (5, 3, 4), (6, 3, 4), (6, 4, 5), (7, 4, 5), (9, 4, 6)]


@lru_cache(maxsize=None)
def certified(n: int, k: int, d: int, width: int = 8):
    """Certified parity-check matrix for (n, k, d), shared across test modules."""
    return search_rho(derive_params(n, k, d), get_field(width)).parity_check


@pytest.fixture
def gf8():
    return get_field(8)


@pytest.fixture
def gf16():
    return get_field(16)


_acceptance: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _acceptance[report.nodeid.split("::")[-1]] = report.outcome.upper()


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(_acceptance.items()):
        verdict = "PASS" if outcome == "PASSED" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}")
