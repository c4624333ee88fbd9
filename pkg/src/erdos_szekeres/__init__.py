"""Exact tools for Erdos-Szekeres pure power products prod (1 - z**s_j)."""

from .moments import (
    NotPlusMinusOne,
    PTEWitness,
    SignedSplit,
    factorial_moments,
    power_moments,
    pte_witness,
    signed_split,
    vanishing_order_by_moments,
    verify_l2_bound,
)
from .newton import (
    ElementarySymmetric,
    IntMultiset,
    NotRealizable,
    PowerSums,
    elementary_from_power,
    equal_by_power_sums,
    power_sums,
    reconstruct_multiset,
)
from .norms import (
    CoefficientNorms,
    RefinementCapReached,
    SupNormEnclosure,
    coeff_norms,
    mean_square_on_grid,
    refine_enclosure,
    sup_norm_enclosure,
)
from .polyring import (
    DegeneratePolynomialError,
    ExponentSequence,
    IntPolynomial,
    divide_by_one_minus_z,
    expand_product,
    mul_one_minus_pow,
    multiplicity_at_one,
)
from .search import SearchRecord, exhaustive_search, local_search, sweep
from .theorems import BoundReport, batch_verify, verify_main_bound, verify_or_inequality

__version__ = "0.1.0"

__all__ = [
    "batch_verify",
    "BoundReport",
    "coeff_norms",
    "CoefficientNorms",
    "DegeneratePolynomialError",
    "divide_by_one_minus_z",
    "elementary_from_power",
    "ElementarySymmetric",
    "equal_by_power_sums",
    "exhaustive_search",
    "expand_product",
    "ExponentSequence",
    "factorial_moments",
    "IntMultiset",
    "IntPolynomial",
    "local_search",
    "mean_square_on_grid",
    "mul_one_minus_pow",
    "multiplicity_at_one",
    "NotPlusMinusOne",
    "NotRealizable",
    "power_moments",
    "power_sums",
    "PowerSums",
    "pte_witness",
    "PTEWitness",
    "reconstruct_multiset",
    "refine_enclosure",
    "RefinementCapReached",
    "SearchRecord",
    "signed_split",
    "SignedSplit",
    "sup_norm_enclosure",
    "SupNormEnclosure",
    "sweep",
    "vanishing_order_by_moments",
    "verify_l2_bound",
    "verify_main_bound",
    "verify_or_inequality",
]
