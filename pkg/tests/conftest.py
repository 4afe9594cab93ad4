from __future__ import annotations

import numpy as np
import pytest

from minimalcodes.code import construct_code
from minimalcodes.spread import SetSystem, build_desarguesian_spread, build_family, search_admissible

# the worked t = 3 triple used throughout
INSTANCE = SetSystem(3, {1, 2, 3, 4}, {1, 2, 3, 5}, {1, 2, 4, 6})


def direct_walsh(table: np.ndarray) -> np.ndarray:
    """O(4^n) double sum of (-1)^(f(x) + w.x), the reference for the FWHT."""
    table = np.asarray(table, dtype=np.int64)
    size = len(table)
    xs = np.arange(size)
    dots = np.bitwise_count(xs[:, None] & xs[None, :]).astype(np.int64) & 1
    return (1 - 2 * ((dots + table[None, :]) & 1)).sum(axis=1)


def naive_span(rows: list[int]) -> list[int]:
    """Codewords in message order by summing rows bit by bit, no doubling."""
    out = []
    for m in range(1 << len(rows)):
        c = 0
        for j, r in enumerate(rows):
            if (m >> j) & 1:
                c ^= r
        out.append(c)
    return out


@pytest.fixture(scope="session")
def spread3():
    return build_desarguesian_spread(3)


@pytest.fixture(scope="session")
def spread4():
    return build_desarguesian_spread(4)


@pytest.fixture(scope="session")
def instance_family(spread3):
    return build_family(spread3, INSTANCE)


@pytest.fixture(scope="session")
def instance_code(instance_family):
    return construct_code(instance_family)


@pytest.fixture(scope="session")
def admissible_t3():
    return search_admissible(3)


@pytest.fixture(scope="session")
def t4_instance():
    return search_admissible(4)[0]


# one line per acceptance criterion, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
