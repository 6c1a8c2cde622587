from __future__ import annotations

import random
from pathlib import Path

import pytest

from homschur import build_free_category, formats as fm

FIXTURES = Path(__file__).parent / "fixtures"

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20261019)


@pytest.fixture
def even_cat():
    return fm.parse_category(fm.load_json(FIXTURES / "cat_even.json"))


@pytest.fixture
def even_rep(even_cat):
    return fm.parse_representation(fm.load_json(FIXTURES / "representation.json"), even_cat)


@pytest.fixture
def loops():
    """One object, two degree-0 loops, paths up to length 2."""
    return build_free_category([("x", 0)], [("f", "x", "x", 0), ("g", "x", "x", 0)], 2)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
