import csv
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from freecircle.families import cp2_member, plumbing_member

DATA = Path(__file__).parent / "data"

settings.register_profile("default", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def read_rows(name):
    with open(DATA / name, newline="") as fh:
        reader = csv.reader(fh)
        next(reader)
        return [tuple(int(x) for x in r) for r in reader]


PLUMBING_ROWS = read_rows("table1_chardata.csv") + read_rows("table2_chardata.csv")
CP2_ROWS = read_rows("table3_chardata.csv")


def plumbing_pool():
    """Admissible plumbing parameters: table rows and family members around them."""
    base = [r[:5] for r in PLUMBING_ROWS]
    rng = np.random.default_rng(7)
    extra = [plumbing_member(base[i], 24 * int(rng.integers(1, 5)), int(rng.integers(-3, 4)))
             for i in rng.integers(0, len(base), 300)]
    return base + extra


def cp2_pool():
    base = [r[:3] for r in CP2_ROWS]
    rng = np.random.default_rng(11)
    extra = [cp2_member(base[i], 24 * int(rng.integers(1, 5)), int(rng.integers(-3, 4)))
             for i in rng.integers(0, len(base), 200)]
    return base + extra


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(k.split(".")[0]), k)):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def record():
    def _record(key, ok, detail=""):
        ACCEPTANCE[key] = (bool(ok), detail)
        print(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok
    return _record
