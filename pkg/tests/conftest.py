import random
from fractions import Fraction as F

import pytest

from einstab.space import SpaceDescriptor, StructureConstants

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


def random_descriptor(rng: random.Random, max_r: int = 5) -> SpaceDescriptor:
    """Arbitrary rational data; the curvature formulas do not need a Lie algebra behind them."""
    r = rng.randint(1, max_r)
    dims = tuple(rng.randint(1, 9) for _ in range(r))
    if sum(dims) < 2:
        dims = (2,) + dims[1:]
    entries = {}
    for _ in range(rng.randint(0, 6)):
        triple = tuple(sorted(rng.randint(1, r) for _ in range(3)))
        entries[triple] = F(rng.randint(1, 20), rng.randint(1, 9))
    killing = tuple(F(rng.randint(1, 9), rng.randint(1, 5)) for _ in range(r))
    return SpaceDescriptor("random", dims, killing, StructureConstants(r, entries))


def random_metric(rng: random.Random, r: int) -> tuple:
    return tuple(F(rng.randint(1, 20), rng.randint(1, 20)) for _ in range(r))


@pytest.fixture
def rng():
    return random.Random(20261016)
