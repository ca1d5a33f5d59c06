"""Exact right-sided permutation tests for tau-a and for differences of tau-a.

The null distribution is obtained by scoring every one of the n!
rearrangements of ``y`` (lexicographic over index arrays); the right p-value
is the fraction whose statistic is at least the observed one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import comb, factorial
from typing import Literal, Sequence

from .errors import InputError, SizeGuardError
from .kendall import MAX_EXHAUSTIVE_N, TieStructure, measure_ties

Arithmetic = Literal["exact", "float"]


@dataclass(frozen=True)
class TestResult:
    statistic: Fraction
    right_p: Fraction
    m_at_stat: int
    n_permutations: int
    is_min_p_given_measure: bool

    __test__ = False  # not a pytest class

    @property
    def p_value(self) -> float:
        return float(self.right_p)

    @property
    def is_max_given_sample(self) -> bool:
        """No permutation of the scores gives a strictly larger statistic."""
        return self.right_p * self.n_permutations == self.m_at_stat


def _pair_signs(v: Sequence) -> list[list[int]]:
    n = len(v)
    return [[int(v[i] > v[j]) - int(v[i] < v[j]) for j in range(n)] for i in range(n)]


class _Scorer:
    """Numerators n_c - n_d of tau(x, y[perm]) with sign tables precomputed."""

    def __init__(self, x: Sequence, y: Sequence):
        if len(x) != len(y):
            raise InputError(f"length mismatch: {len(x)} vs {len(y)}")
        n = len(x)
        if n < 2:
            raise InputError("need at least two observations")
        if n > MAX_EXHAUSTIVE_N:
            raise SizeGuardError(f"exact tests enumerate n! permutations; n <= {MAX_EXHAUSTIVE_N} required")
        sx = _pair_signs(x)
        self.pairs = [(i, j, sx[i][j]) for i in range(n) for j in range(i + 1, n) if sx[i][j]]
        self.sy = _pair_signs(y)
        self.n = n

    def numerator(self, perm: Sequence[int]) -> int:
        sy = self.sy
        return sum(s * sy[perm[i]][perm[j]] for i, j, s in self.pairs)


def _check_size(n: int):
    if n > MAX_EXHAUSTIVE_N:
        raise SizeGuardError(f"exact tests enumerate n! permutations; n <= {MAX_EXHAUSTIVE_N} required")


def exact_right_pvalue(x: Sequence, y: Sequence) -> TestResult:
    """Exact right p-value of tau-a(x, y) over all n! permutations of ``y``."""
    _check_size(len(x))
    scorer = _Scorer(x, y)
    n = scorer.n
    observed = scorer.numerator(range(n))
    tail = at = 0
    for perm in permutations(range(n)):
        v = scorer.numerator(perm)
        if v >= observed:
            tail += 1
            if v == observed:
                at += 1
    total = factorial(n)
    right_p = Fraction(tail, total)
    floor = Fraction(TieStructure.of(x).multiplicity, total)
    return TestResult(Fraction(observed, comb(n, 2)), right_p, at, total, right_p == floor)


def exact_diff_right_pvalue(x1: Sequence, x2: Sequence, y: Sequence, arithmetic: Arithmetic = "exact") -> TestResult:
    """Exact right p-value of tau-a(x1, y) - tau-a(x2, y).

    The same permutation of ``y`` feeds both correlations.  With
    ``arithmetic="float"`` each tau is a double and the differences are
    compared in floating point, as a naive implementation would do; equal
    rational differences can then land on either side of the observed value
    and drop out of the tail.  ``"exact"`` compares rationals.
    """
    if arithmetic not in ("exact", "float"):
        raise InputError(f"unknown arithmetic {arithmetic!r}")
    _check_size(len(y))
    s1 = _Scorer(x1, y)
    s2 = _Scorer(x2, y)
    n = s1.n
    pairs = comb(n, 2)

    if arithmetic == "exact":
        def stat(perm):
            return s1.numerator(perm) - s2.numerator(perm)
    else:
        def stat(perm):
            return s1.numerator(perm) / pairs - s2.numerator(perm) / pairs

    observed = stat(range(n))
    tail = at = 0
    for perm in permutations(range(n)):
        v = stat(perm)
        if v >= observed:
            tail += 1
            if v == observed:
                at += 1
    total = factorial(n)
    statistic = Fraction(s1.numerator(range(n)) - s2.numerator(range(n)), pairs)
    right_p = Fraction(tail, total)
    # no analytic floor exists for differences
    return TestResult(statistic, right_p, at, total, False)


def min_count_at_statistic(x: Sequence, y: Sequence) -> int:
    """Lower bound on how many permutations reproduce the observed tau.

    Shuffling values inside a tie group does not change the sequence, so at
    least ``max(prod t_i!, prod u_i!)`` permutations share the statistic.
    """
    return max(TieStructure.of(x).multiplicity, TieStructure.of(y).multiplicity)


def pvalue_floor(x: Sequence) -> Fraction:
    """Smallest right p-value reachable against ``x`` when scores are all distinct."""
    _check_size(len(x))
    return Fraction(TieStructure.of(x).multiplicity, factorial(len(x)))


def pvalue_lower_bound(measure) -> Fraction:
    """Smallest right p-value attainable with ``measure`` over all orders.

    For three constituents: 1/180 for d, 1/90 for p and 1/6 for c.
    """
    ties = measure_ties(measure)
    _check_size(ties.n)
    return Fraction(ties.multiplicity, factorial(ties.n))


def holm_adjust(pvalues: Sequence) -> list:
    """Holm step-down adjustment, returned in input order.

    Works with floats or Fractions; the result keeps the input number type.
    """
    pvalues = list(pvalues)
    if not pvalues:
        raise InputError("holm_adjust needs at least one p-value")
    for p in pvalues:
        if not 0 <= p <= 1:
            raise InputError(f"p-value out of range: {p}")
    m = len(pvalues)
    order = sorted(range(m), key=lambda i: pvalues[i])
    adjusted = [None] * m
    running = 0
    for rank, i in enumerate(order):
        p = pvalues[i]
        running = max(running, min(p - p + 1, (m - rank) * p))
        adjusted[i] = running
    return adjusted
