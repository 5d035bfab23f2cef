"""Exact secrecy analysis: Smith normal form, lattice counting, entropy."""

from .entropy import (
    AsymptoticCheck,
    LeakageReport,
    asymptotic_check,
    closed_form_entropy_212,
    conditional_entropy,
    hyperfactorial,
    leakage_gap,
    lower_bound,
    upper_bound,
)
from .lattice import (
    DiophantineSolutionSet,
    SecretCounts,
    count_box_solutions,
    count_secret_solutions,
    iter_box_solutions,
    solve_diophantine,
)
from .smith import SmithDecomposition, check_decomposition, smith_normal_form

__all__ = [
    "AsymptoticCheck",
    "DiophantineSolutionSet",
    "LeakageReport",
    "SecretCounts",
    "SmithDecomposition",
    "asymptotic_check",
    "check_decomposition",
    "closed_form_entropy_212",
    "conditional_entropy",
    "count_box_solutions",
    "count_secret_solutions",
    "hyperfactorial",
    "iter_box_solutions",
    "leakage_gap",
    "lower_bound",
    "smith_normal_form",
    "solve_diophantine",
    "upper_bound",
]
