"""Global test across conditions: the sum S of tau-a, with a Monte Carlo p-value.

Each randomization permutes every condition's scores independently and
uniformly and recomputes S.  The p-value is the fraction of the T
randomizations with S' >= S.

Randomizations are split into fixed blocks of ``BLOCK`` draws.  Block ``b``
gets its own Philox stream keyed by ``SeedSequence(seed, spawn_key=(b,))``,
so the tail count does not depend on how blocks are spread over workers.
"""

from __future__ import annotations

import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import comb, factorial, lcm
from typing import Sequence

import numpy as np

from .dataset import Condition, ORDERS, to_cost
from .errors import InputError, SizeGuardError
from .kendall import MAX_EXHAUSTIVE_N, tau_a
from .permutation import DistanceMeasure

log = logging.getLogger(__name__)

BLOCK = 1 << 16


@dataclass(frozen=True)
class ConditionSet:
    conditions: tuple[Condition, ...]

    def __post_init__(self):
        object.__setattr__(self, "conditions", tuple(self.conditions))
        if not self.conditions:
            raise InputError("a condition set needs at least one condition")

    @property
    def languages(self) -> list[str]:
        return sorted({c.language for c in self.conditions})

    def __add__(self, other: ConditionSet) -> ConditionSet:
        return ConditionSet(self.conditions + other.conditions)

    def __len__(self):
        return len(self.conditions)


@dataclass(frozen=True)
class GlobalResult:
    statistic: Fraction
    tail_count: int
    T: int
    seed: int

    @property
    def S(self) -> Fraction:
        return self.statistic

    @property
    def p_estimate(self) -> float:
        return self.tail_count / self.T

    @property
    def min_nonzero_p(self) -> float:
        return 1 / self.T

    @property
    def p_display(self) -> str:
        if self.tail_count == 0:
            return f"< {self.min_nonzero_p:.2g}"
        return f"{self.p_estimate:.3g}"


def _as_set(conditions) -> ConditionSet:
    return conditions if isinstance(conditions, ConditionSet) else ConditionSet(tuple(conditions))


def global_S(conditions: ConditionSet | Sequence[Condition], measure: DistanceMeasure, orders=ORDERS) -> Fraction:
    """Sum over conditions of tau-a(measure, cost scores)."""
    conditions = _as_set(conditions)
    x = measure.values(orders)
    return sum((tau_a(x, to_cost(c).vector(orders)).tau for c in conditions.conditions), Fraction(0))


def _sign_matrix(v: np.ndarray) -> np.ndarray:
    return np.sign(v[:, None] - v[None, :]).astype(np.int64)


class _Tables:
    """For each condition, tau numerators (scaled to a common denominator)
    of every measure against every permutation of its scores."""

    def __init__(self, conditions: ConditionSet, measures: Sequence[DistanceMeasure], orders):
        n = len(orders)
        if n > MAX_EXHAUSTIVE_N:
            raise SizeGuardError(f"permutation tables need n <= {MAX_EXHAUSTIVE_N}")
        self.n_perm = factorial(n)
        perms = np.array(list(permutations(range(n))), dtype=np.intp)
        iu, ju = np.triu_indices(n, 1)
        self.denominator = comb(n, 2)
        # rows: condition; columns: permutation index; one array per measure
        self.tables = []
        for m in measures:
            sx = _sign_matrix(np.asarray(m.values(orders), dtype=float))[iu, ju]
            rows = []
            for c in conditions.conditions:
                y = np.asarray(to_cost(c).vector(orders), dtype=float)
                sy = _sign_matrix(y)
                rows.append((sy[perms[:, iu], perms[:, ju]] * sx).sum(axis=1))
            self.tables.append(np.stack(rows))
        self.k = len(conditions.conditions)

    def observed(self, weights: Sequence[int]) -> int:
        # permutation index 0 is the identity
        return int(sum(w * t[:, 0].sum() for w, t in zip(weights, self.tables)))


def _block_tail(tables: _Tables, weights, observed: int, seed: int, block: int, size: int) -> int:
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(block,))))
    idx = rng.integers(0, tables.n_perm, size=(tables.k, size))
    rows = np.arange(tables.k)[:, None]
    total = np.zeros(size, dtype=np.int64)
    for w, t in zip(weights, tables.tables):
        if w:
            total += w * t[rows, idx].sum(axis=0)
    return int(np.count_nonzero(total >= observed))


def _run(conditions, measures, weights, T, seed, workers, progress) -> GlobalResult:
    if T < 1:
        raise InputError("the number of randomizations T must be at least 1")
    if seed is None or seed < 0:
        raise InputError("an explicit non-negative seed is required")
    conditions = _as_set(conditions)
    tables = _Tables(conditions, measures, ORDERS)
    observed = tables.observed(weights)
    sizes = [min(BLOCK, T - start) for start in range(0, T, BLOCK)]

    def job(b):
        return _block_tail(tables, weights, observed, seed, b, sizes[b])

    tail = 0
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for done, count in enumerate(pool.map(job, range(len(sizes))), start=1):
                tail += count
                if progress:
                    print(f"\r{done}/{len(sizes)} blocks", end="", file=sys.stderr)
    else:
        for b in range(len(sizes)):
            tail += job(b)
            if progress:
                print(f"\r{b + 1}/{len(sizes)} blocks", end="", file=sys.stderr)
    if progress:
        print(file=sys.stderr)
    statistic = Fraction(observed, tables.denominator)
    log.debug("S=%s tail=%d T=%d seed=%d", statistic, tail, T, seed)
    return GlobalResult(statistic, tail, T, seed)


def monte_carlo_right_pvalue(conditions, measure: DistanceMeasure, T: int = 1_000_000, seed: int = 1,
                             workers: int = 1, progress: bool = False) -> GlobalResult:
    """Monte Carlo right p-value of S = sum of tau-a(measure, scores)."""
    return _run(conditions, [measure], [1], T, seed, workers, progress)


def monte_carlo_diff_pvalue(conditions, m1: DistanceMeasure, m2: DistanceMeasure, T: int = 1_000_000,
                            seed: int = 1, workers: int = 1, progress: bool = False) -> GlobalResult:
    """Monte Carlo right p-value of S(m1) - S(m2); both measures see the same permutations."""
    return _run(conditions, [m1, m2], [1, -1], T, seed, workers, progress)
