"""Bornologies, size functions and the monk operator on finite universes and point clouds.

The monk of a size function ``s`` is ``s°(A) = inf{t : A has a finite cover by
sets of size <= t}``.  On a finite universe it equals ``max over x in A of
min over B containing x of s(B)`` and is the greatest maxitive measure below ``s``.
"""

from .bornology import (FinitePoset, MapSpec, SetFamily, check_bornology, generate_bornology,
                        is_bounded_map, metric_ball_bornology, poset_bornology, pullback_bornology)
from .core import (INF, MAX_POWERSET_N, FiniteUniverse, SubsetMask, Verdict, enumerate_covers,
                   enumerate_subsets, ext, format_ext)
from .errors import (BornoError, BudgetZero, ContractViolation, EmptyCloud, HypothesisNotMet,
                     InvalidBornology, NotCovering, NotDirected, ParseError, TooManyPoints,
                     UniverseTooLarge, UnknownSuite)
from .geometry import (PointCloud, alpha_size, beta_size, diameter, enclosing_radius,
                       exact_cover_optimum, farthest_first, metric_size, min_enclosing_ball,
                       size_relation_check)
from .monk import (MaxitiveMeasure, constrained_chain, constrained_monk_exact,
                   constrained_monk_gonzalez, greatest_maxitive_below, is_maxitive,
                   monk_bruteforce, monk_closed_form, monk_table, rho_bounded_family)
from .sizes import (SizeFunction, SizeTable, check_size_function, counting_size, is_total,
                    random_size_table, require_size_function, tabulate)
from .topology import (FiniteTopology, heine_borel_family, is_closed_size, is_locally_bounded,
                       is_weakly_outer_continuous, rho_plus, rho_plus_table,
                       verify_compact_proposition, verify_theorem_oc)

__version__ = "0.1.0"

__all__ = [
    "BornoError", "BudgetZero", "ContractViolation", "EmptyCloud", "FinitePoset",
    "FiniteTopology", "FiniteUniverse", "HypothesisNotMet", "INF", "InvalidBornology",
    "MAX_POWERSET_N", "MapSpec", "MaxitiveMeasure", "NotCovering", "NotDirected", "ParseError",
    "PointCloud", "SetFamily", "SizeFunction", "SizeTable", "SubsetMask", "TooManyPoints",
    "UniverseTooLarge", "UnknownSuite", "Verdict", "alpha_size", "beta_size", "check_bornology",
    "check_size_function", "constrained_chain", "constrained_monk_exact",
    "constrained_monk_gonzalez", "counting_size", "diameter", "enclosing_radius",
    "enumerate_covers", "enumerate_subsets", "exact_cover_optimum", "ext", "farthest_first",
    "format_ext", "generate_bornology", "greatest_maxitive_below", "heine_borel_family",
    "is_bounded_map", "is_closed_size", "is_locally_bounded", "is_maxitive", "is_total",
    "is_weakly_outer_continuous", "metric_ball_bornology", "metric_size", "min_enclosing_ball",
    "monk_bruteforce", "monk_closed_form", "monk_table", "poset_bornology",
    "pullback_bornology", "random_size_table", "require_size_function", "rho_bounded_family",
    "rho_plus", "rho_plus_table", "size_relation_check", "tabulate",
    "verify_compact_proposition", "verify_theorem_oc",
]
