"""Kendall tau-a with exact pair accounting, and its attainable range under ties.

tau-a is ``(n_c - n_d) / C(n, 2)``: tied pairs count in the denominator, so a
vector correlated with itself only reaches 1 when it has no ties.  Values are
kept as :class:`fractions.Fraction` so that table values compare exactly.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import comb, factorial, prod
from typing import Sequence

from .errors import InputError, SizeGuardError

MAX_EXHAUSTIVE_N = 8

# 1/3 and 4/5: the largest |tau| reachable by c and by p over the six orders.
C_CEILING = Fraction(1, 3)
P_CEILING = Fraction(4, 5)


@dataclass(frozen=True)
class PairCounts:
    n_c: int
    n_d: int
    n_0: int
    n: int

    def __post_init__(self):
        if min(self.n_c, self.n_d, self.n_0) < 0 or self.n_c + self.n_d + self.n_0 != comb(self.n, 2):
            raise InputError(f"inconsistent pair counts {self}")


@dataclass(frozen=True)
class TieStructure:
    """Sizes of the groups of equal values, in increasing order of the value."""

    groups: tuple[int, ...]

    def __post_init__(self):
        if any(t < 1 for t in self.groups):
            raise InputError("tie groups must be non-empty")

    @classmethod
    def of(cls, values: Sequence) -> TieStructure:
        counts = Counter(values)
        return cls(tuple(counts[v] for v in sorted(counts)))

    @classmethod
    def distinct(cls, n: int) -> TieStructure:
        return cls((1,) * n)

    @property
    def n(self) -> int:
        return sum(self.groups)

    @property
    def n_distinct(self) -> int:
        return len(self.groups)

    @property
    def tied_pairs(self) -> int:
        return sum(comb(t, 2) for t in self.groups)

    @property
    def multiplicity(self) -> int:
        """Number of rearrangements that leave the sequence unchanged."""
        return prod(factorial(t) for t in self.groups)


@dataclass(frozen=True)
class TauResult:
    tau: Fraction
    counts: PairCounts
    tie_x: TieStructure
    tie_y: TieStructure

    def __float__(self):
        return float(self.tau)

    @property
    def value(self) -> float:
        return float(self.tau)


def _sign(a, b) -> int:
    return int(a > b) - int(a < b)


def _check_pair(x: Sequence, y: Sequence):
    if len(x) != len(y):
        raise InputError(f"length mismatch: {len(x)} vs {len(y)}")
    if len(x) < 2:
        raise InputError("need at least two observations")


def pair_counts(x: Sequence, y: Sequence) -> PairCounts:
    _check_pair(x, y)
    n = len(x)
    n_c = n_d = 0
    for i in range(n):
        for j in range(i + 1, n):
            s = _sign(x[i], x[j]) * _sign(y[i], y[j])
            if s > 0:
                n_c += 1
            elif s < 0:
                n_d += 1
    return PairCounts(n_c, n_d, comb(n, 2) - n_c - n_d, n)


def tau_a(x: Sequence, y: Sequence) -> TauResult:
    """Kendall tau-a of two equal-length samples.

    >>> float(tau_a([1, 1, 2, 2, 3, 3], [1, 1, 2, 2, 3, 3]).tau)
    0.8
    """
    counts = pair_counts(x, y)
    tau = Fraction(counts.n_c - counts.n_d, comb(counts.n, 2))
    return TauResult(tau, counts, TieStructure.of(x), TieStructure.of(y))


def tau_range_given_ties(tie_x: TieStructure, tie_y: TieStructure, n: int | None = None) -> tuple[Fraction, Fraction]:
    """Interval that must contain tau-a for any samples with these ties.

    Tied pairs in either variable are neither concordant nor discordant, so
    ``n_0`` is at least the larger of the two tied-pair counts and
    ``|tau| <= 1 - n_0 / C(n, 2)``.
    """
    if n is None:
        n = tie_x.n
    if tie_x.n != n or tie_y.n != n:
        raise InputError(f"tie structures cover {tie_x.n} and {tie_y.n} values, expected {n}")
    if n < 2:
        raise InputError("need at least two observations")
    total = comb(n, 2)
    hi = 1 - Fraction(max(tie_x.tied_pairs, tie_y.tied_pairs), total)
    return -hi, hi


def measure_ties(measure, orders=None) -> TieStructure:
    from .permutation import all_orders

    if orders is None:
        orders = all_orders(measure.canonical.symbols)
    return TieStructure.of(measure.values(orders))


def is_max_given_measure(result: TauResult, measure=None) -> bool:
    """Whether tau reaches the ceiling the measure's own ties allow.

    The ceiling assumes all-distinct scores: no relabeling of the score
    column could correlate more strongly with this measure.  Without a
    ``measure`` the tie structure of ``x`` stored in ``result`` is used.
    """
    tie_x = result.tie_x if measure is None else measure_ties(measure)
    if measure is not None and tie_x != result.tie_x:
        raise InputError(f"result was not computed against measure {measure.kind!r}")
    _, hi = tau_range_given_ties(tie_x, TieStructure.distinct(tie_x.n))
    return result.tau == hi


def _distinct_permutations(y: Sequence):
    seen = set()
    for q in permutations(y):
        if q not in seen:
            seen.add(q)
            yield q


def max_given_sample(x: Sequence, y: Sequence) -> tuple[Fraction, bool]:
    """Largest tau-a over all rearrangements of ``y``, and whether ``y`` attains it."""
    _check_pair(x, y)
    if len(x) > MAX_EXHAUSTIVE_N:
        raise SizeGuardError(f"exhaustive scan limited to n <= {MAX_EXHAUSTIVE_N}")
    best = max(tau_a(x, q).tau for q in _distinct_permutations(y))
    return best, tau_a(x, y).tau == best


def max_diff_given_sample(x1: Sequence, x2: Sequence, y: Sequence) -> tuple[Fraction, bool]:
    """Same as :func:`max_given_sample` for the statistic tau(x1, y) - tau(x2, y)."""
    _check_pair(x1, y)
    _check_pair(x2, y)
    if len(y) > MAX_EXHAUSTIVE_N:
        raise SizeGuardError(f"exhaustive scan limited to n <= {MAX_EXHAUSTIVE_N}")
    best = max(tau_a(x1, q).tau - tau_a(x2, q).tau for q in _distinct_permutations(y))
    return best, tau_a(x1, y).tau - tau_a(x2, y).tau == best


def dominance_check(tau_d, tau_p=None, tau_c=None) -> frozenset[str]:
    """Dominances of swap distance implied by the value of tau(d, y) alone.

    Above 1/3, d must beat c; above 4/5 it must beat p as well.  The mirrored
    statements hold below -1/3 and -4/5.  Returns labels such as ``"d>c"``.
    When ``tau_p``/``tau_c`` are given they are checked against the claims.
    """
    tau_d = Fraction(tau_d)
    out = set()
    if tau_d > C_CEILING:
        out.add("d>c")
    if tau_d > P_CEILING:
        out.add("d>p")
    if tau_d < -C_CEILING:
        out.add("d<c")
    if tau_d < -P_CEILING:
        out.add("d<p")
    observed = {"p": tau_p, "c": tau_c}
    for claim in out:
        other = observed[claim[2]]
        if other is None:
            continue
        other = Fraction(other)
        if (claim[1] == ">" and not tau_d > other) or (claim[1] == "<" and not tau_d < other):
            raise InputError(f"tau values violate {claim}; were they computed on the same scores?")
    return frozenset(out)
