import json
from functools import lru_cache
from pathlib import Path

import pytest

from skein.category import build

FIXTURES = Path(__file__).parent / "fixtures"

SPIN_POINTS = [(2, 2), (2, 6), (4, 4)]
ALL_POINTS = [(2, 2, "spin"), (2, 6, "spin"), (4, 4, "spin"), (2, 4, "coh")]


@lru_cache(maxsize=None)
def category(N, K, mode="spin"):
    return build(N, K, mode)


@pytest.fixture(scope="session")
def cat22():
    return category(2, 2)


@pytest.fixture(scope="session")
def cat26():
    return category(2, 6)


@pytest.fixture(scope="session")
def cat44():
    return category(4, 4)


@pytest.fixture(scope="session")
def cat24coh():
    return category(2, 4, "coh")


@pytest.fixture(scope="session", params=ALL_POINTS, ids=lambda p: f"{p[0]}-{p[1]}-{p[2]}")
def any_cat(request):
    return category(*request.param)


def load_fixture(name):
    return json.loads((FIXTURES / name).read_text(encoding="utf-8"))


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
