from itertools import combinations, permutations
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from math import comb

import numpy as np
import pytest

from swapdist import Order

# Orders listed from least to most distant from SOV.
ROW_ORDERS = [Order.parse(o) for o in ("SOV", "OSV", "SVO", "OVS", "VSO", "VOS")]
D = [0, 1, 1, 2, 2, 3]
P = [0, 0, 1, 1, 2, 2]
C = [0, 1, 1, 1, 1, 1]

MALAYALAM_COST = [-1.05, -0.80, -0.36, -0.30, 0.14, 0.36]
KOREAN_RANKS = [1, 2, 3, 3, 4, 4]
MALAYALAM_RANKS = [1, 1, 2, 2, 3, 3]


def naive_tau(x, y):
    """Independent tau-a: sum of outer sign products over the upper triangle."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    sx = np.sign(x[:, None] - x[None, :])
    sy = np.sign(y[:, None] - y[None, :])
    total = int((sx * sy).sum()) // 2
    return Fraction(total, comb(len(x), 2))


def brute_right_p(x, y):
    """Right p-value by scoring every arrangement of the y values."""
    t = naive_tau(x, y)
    perms = list(permutations(y))
    return Fraction(sum(naive_tau(x, q) >= t for q in perms), len(perms))


def brute_diff_right_p(x1, x2, y):
    t = naive_tau(x1, y) - naive_tau(x2, y)
    perms = list(permutations(y))
    return Fraction(sum(naive_tau(x1, q) - naive_tau(x2, q) >= t for q in perms), len(perms))


def half_up(value, decimals):
    if isinstance(value, Fraction):
        exact = Decimal(value.numerator) / Decimal(value.denominator)
    else:
        exact = Decimal(repr(float(value)))
    return float(exact.quantize(Decimal(1).scaleb(-decimals), rounding=ROUND_HALF_UP))


def decimals_of(printed: str) -> int:
    return len(printed.split(".")[1]) if "." in printed else 0


def matches_printed(value, printed: str) -> bool:
    """Equality after half-up rounding to the printed number of decimals."""
    return half_up(value, decimals_of(printed)) == float(printed)


@pytest.fixture
def rng():
    return np.random.default_rng(20240101)


# One line per acceptance criterion, printed at the end of the session.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
