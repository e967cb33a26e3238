from fractions import Fraction

import pytest
from hypothesis import settings

from geomcut.geom import Instance, Polygon, pt

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def square(x, y, color, size=1):
    x, y, size = Fraction(x), Fraction(y), Fraction(size)
    return Polygon((pt(x, y), pt(x + size, y), pt(x + size, y + size), pt(x, y + size)), color)


def rect(x0, y0, x1, y1, color):
    return Polygon((pt(x0, y0), pt(x1, y0), pt(x1, y1), pt(x0, y1)), color)


def scaled(inst: Instance, s: Fraction, dx=Fraction(0), dy=Fraction(0)) -> Instance:
    return Instance(inst.num_colors, tuple(
        Polygon(tuple(pt(v.x * s + dx, v.y * s + dy) for v in o.vertices), o.color)
        for o in inst.objects))


@pytest.fixture
def two_squares():
    """Red unit square at the origin, green unit square at (3, 0)."""
    return Instance(2, (square(0, 0, 0), square(3, 0, 1)))


@pytest.fixture
def three_squares():
    return Instance(3, (square(0, 0, 0), square(3, 0, 1), square(0, 3, 2)))


ACCEPTANCE: list[str] = []


def record(criterion: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}"
    ACCEPTANCE.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
