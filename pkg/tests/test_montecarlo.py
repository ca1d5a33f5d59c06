from fractions import Fraction
from math import sqrt

import pytest

from swapdist import ConditionSet, bundled_paper_data, global_S, monte_carlo_diff_pvalue, monte_carlo_right_pvalue
from swapdist.dataset import ORDERS, Condition, to_cost
from swapdist.errors import InputError
from swapdist.montecarlo import BLOCK, GlobalResult
from swapdist.permutation import standard_measures
from swapdist.significance import exact_right_pvalue

M = standard_measures("SOV", "V")


def by_language(language):
    return ConditionSet(tuple(c for c in bundled_paper_data() if c.language == language))


def test_global_S_sums_condition_taus():
    korean = by_language("Korean")
    assert global_S(korean, M["d"]) == Fraction(33, 15)
    assert global_S(korean, M["p"]) == Fraction(36, 15)
    sinhalese = by_language("Sinhalese")
    assert global_S(sinhalese, M["d"]) == Fraction(7 + 5 + 6 + 0, 15)


def test_single_condition_S_is_its_tau():
    mal = ConditionSet((bundled_paper_data()[0],))
    assert global_S(mal, M["d"]) == Fraction(13, 15)


def test_S_is_additive():
    k, s = by_language("Korean"), by_language("Sinhalese")
    for m in M.values():
        assert global_S(k + s, m) == global_S(k, m) + global_S(s, m)


def test_empty_set_rejected():
    with pytest.raises(InputError):
        ConditionSet(())


def test_bad_T_and_seed():
    with pytest.raises(InputError):
        monte_carlo_right_pvalue(by_language("Korean"), M["d"], T=0)
    with pytest.raises(InputError):
        monte_carlo_right_pvalue(by_language("Korean"), M["d"], T=10, seed=None)


def test_constant_scores_always_in_tail():
    flat = Condition("X", None, "error_rank", "written", "cost", dict.fromkeys(ORDERS, 1))
    r = monte_carlo_right_pvalue(ConditionSet((flat,)), M["d"], T=1, seed=3)
    assert r.statistic == 0 and r.p_estimate == 1.0


def test_same_measure_difference():
    r = monte_carlo_diff_pvalue(by_language("Korean"), M["d"], M["d"], T=5000, seed=1)
    assert r.statistic == 0 and r.p_estimate == 1.0


def test_difference_statistic():
    r = monte_carlo_diff_pvalue(by_language("Korean"), M["d"], M["c"], T=1000, seed=1)
    assert r.statistic == Fraction(33 - 15, 15)


def test_deterministic_and_worker_independent():
    cs = by_language("Sinhalese")
    T = 3 * BLOCK + 123
    a = monte_carlo_right_pvalue(cs, M["d"], T=T, seed=42)
    b = monte_carlo_right_pvalue(cs, M["d"], T=T, seed=42, workers=4)
    c = monte_carlo_right_pvalue(cs, M["d"], T=T, seed=42, workers=3)
    assert a == b == c
    assert monte_carlo_right_pvalue(cs, M["d"], T=T, seed=43) != a


def test_p_is_multiple_of_one_over_T():
    r = monte_carlo_right_pvalue(by_language("Malayalam"), M["c"], T=777, seed=5)
    assert r.p_estimate * 777 == pytest.approx(r.tail_count)
    assert r.min_nonzero_p == 1 / 777


def test_display():
    assert GlobalResult(Fraction(1), 0, 10**6, 1).p_display == "< 1e-06"
    assert GlobalResult(Fraction(1), 25, 1000, 1).p_display == "0.025"


def test_agrees_with_exact_test_moderate_T():
    d = M["d"].values(ORDERS)
    for c in bundled_paper_data()[4:]:
        exact = exact_right_pvalue(d, to_cost(c).vector()).p_value
        T = 200_000
        r = monte_carlo_right_pvalue(ConditionSet((c,)), M["d"], T=T, seed=11)
        se = sqrt(exact * (1 - exact) / T)
        assert abs(r.p_estimate - exact) <= max(4 * se, 1 / T)


def test_doubling_T_stays_in_band():
    cs = by_language("Sinhalese")
    small = monte_carlo_right_pvalue(cs, M["p"], T=100_000, seed=8)
    large = monte_carlo_right_pvalue(cs, M["p"], T=200_000, seed=8)
    p = small.p_estimate
    assert abs(large.p_estimate - p) <= 4 * sqrt(p * (1 - p) / 100_000)
