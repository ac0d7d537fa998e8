from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import strategies as st

from lipfree import validate


def closure(D):
    n = len(D)
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if D[i][k] + D[k][j] < D[i][j]:
                    D[i][j] = D[i][k] + D[k][j]
    return D


@st.composite
def metrics(draw, min_n=1, max_n=7):
    """Shortest-path closures of random positive rational weights."""
    n = draw(st.integers(min_n, max_n))
    D = [[Fraction(0)] * n for _ in range(n)]
    for i, j in combinations(range(n), 2):
        w = Fraction(draw(st.integers(1, 30)), draw(st.integers(1, 5)))
        D[i][j] = D[j][i] = w
    return validate(closure(D))


@pytest.fixture
def path3():
    return validate([[0, 1, 2], [1, 0, 1], [2, 1, 0]])


@pytest.fixture
def star3():
    return validate([[0, 1, 1], [1, 0, 2], [1, 2, 0]])


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
