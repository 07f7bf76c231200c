import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

_REPORT_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_REPORT_KEY] = []


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion, then assert it."""

    def record(label: str, ok: bool, detail: str) -> None:
        line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail}"
        request.config.stash[_REPORT_KEY].append(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_REPORT_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


def write_prices(path, values, start=None):
    """Write a price CSV with consecutive calendar dates."""
    from datetime import date, timedelta

    from ordinalplane import TimeSeries, price_csv

    start = start or date(1983, 1, 10)
    dates = tuple(start + timedelta(days=i) for i in range(len(values)))
    path.write_text(price_csv(TimeSeries(np.asarray(values, dtype=float), dates)))
    return path
