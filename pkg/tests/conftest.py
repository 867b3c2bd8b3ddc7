import itertools
from fractions import Fraction

import pytest


def leibniz_det(m):
    """Determinant by the permutation expansion; independent of Bareiss."""
    k = len(m)
    total = Fraction(0)
    for perm in itertools.permutations(range(k)):
        inv = sum(1 for i in range(k) for j in range(i + 1, k) if perm[i] > perm[j])
        prod = Fraction(1)
        for i, p in enumerate(perm):
            prod *= m[i][p]
        total += -prod if inv % 2 else prod
    return total


@pytest.fixture
def det_oracle():
    return leibniz_det


# one line per acceptance criterion, repeated in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
