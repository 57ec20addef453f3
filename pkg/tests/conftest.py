import math
import time

import numpy as np
import pytest

from normplane import lp_norm, preset, regular_polygon_norm

SQRT2 = math.sqrt(2.0)

_CRITERIA: list[str] = []


def named_norms():
    return {
        "hexagon": preset("hexagon-paper"),
        "octagon": preset("octagon-max"),
        "square": preset("square"),
        "euclidean": preset("euclidean"),
        "l3": lp_norm(3),
        "regular6": regular_polygon_norm(6, 0.3),
    }


TEST_NORMS = named_norms()


@pytest.fixture(params=sorted(TEST_NORMS))
def any_norm(request):
    return TEST_NORMS[request.param]


@pytest.fixture
def hexagon():
    return preset("hexagon-paper")


@pytest.fixture
def square():
    return preset("square")


@pytest.fixture
def octagon():
    return preset("octagon-max")


@pytest.fixture
def euclid():
    return preset("euclidean")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


class Criterion:
    """Times a block and records one PASS/FAIL line for the terminal summary."""

    def __init__(self, number: int, title: str):
        self.number, self.title = number, title
        self.notes: list[str] = []

    def note(self, text: str) -> None:
        self.notes.append(text)

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.elapsed = time.perf_counter() - self.start
        status = "PASS" if exc_type is None else "FAIL"
        detail = "; ".join(self.notes)
        why = "" if exc is None else f" [{type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}]"
        line = f"{status} criterion {self.number}: {self.title} ({self.elapsed:.2f} s){'; ' + detail if detail else ''}{why}"
        _CRITERIA.append(line)
        print(line)
        return False


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
