"""Swap distance minimization in word order.

Distances on the permutahedron of constituent orders, Kendall tau-a with
ties, exact and Monte Carlo permutation tests, and the conditions of the
Korean, Malayalam and Sinhalese word order studies.
"""

__version__ = "0.1.0"

from .dataset import Condition, ContrastChain, bundled_paper_data, load_csv, ranks_from_contrasts, to_cost
from .errors import (
    AlphabetMismatchError,
    DataValidationError,
    InputError,
    ParseError,
    SizeGuardError,
    SwapDistError,
    UnsupportedArityError,
)
from .kendall import TauResult, TieStructure, max_given_sample, tau_a, tau_range_given_ties
from .montecarlo import ConditionSet, global_S, monte_carlo_diff_pvalue, monte_carlo_right_pvalue
from .permutation import (
    DistanceMeasure,
    Order,
    all_orders,
    build_permutahedron,
    predicted_cost_levels,
    rotation_angle,
    standard_measures,
    swap_distance,
)
from .significance import exact_diff_right_pvalue, exact_right_pvalue, holm_adjust, pvalue_lower_bound
