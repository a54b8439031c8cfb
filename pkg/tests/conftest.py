import json
from functools import lru_cache
from pathlib import Path

import pytest

from satfloer import (
    figure_eight_knot_companion,
    torus_knot_companion,
    unknot_companion,
)
from satfloer.harness import resolve_pattern

DATA = Path(__file__).parent / "data"

PATTERNS = ["unknot", "cable(2,3)", "cable(3,1)", "mazur"]
COMPANIONS = ["U", "T23", "-T23", "T25", "4_1"]


@lru_cache(maxsize=None)
def companion(name):
    return {
        "U": unknot_companion,
        "T23": lambda: torus_knot_companion(3),
        "-T23": lambda: torus_knot_companion(-3),
        "T25": lambda: torus_knot_companion(5),
        "4_1": figure_eight_knot_companion,
    }[name]()


@lru_cache(maxsize=None)
def pattern(name, torus=None):
    return resolve_pattern(name, torus)


@lru_cache(maxsize=None)
def oracle():
    return json.loads((DATA / "oracle_values.json").read_text())


def oracle_entry(p, c):
    e = oracle()["values"][f"{p}|{c}"]
    return {
        "rank": e["total_rank"],
        "dims": {int(k): v for k, v in e["alexander_dims"].items()},
        "poly": {int(k): v for k, v in e["alexander_poly"].items()},
        "tau": e["tau"],
    }


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])


@pytest.fixture
def acceptance():
    def record(n, ok, detail):
        ACCEPTANCE_LINES[n] = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(ACCEPTANCE_LINES[n])
        return ok

    return record
