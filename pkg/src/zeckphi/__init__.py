"""Zeckendorf and base-phi sum-of-digits functions, generalized Beatty
sequences and the morphisms that generate their difference sequences."""

from .base_phi import PhiExpansion, beta_expand, beta_expand_rst, beta_value, s_beta
from .beatty import Gbs, gbs_terms, merge_union
from .golden import GoldenInt, fib, floor_mul_phi, lucas, phi_pow
from .morphism import Morphism, fixed_point, parse_morphism
from .spectrum import CheckReport, classify, run_check
from .zeckendorf import ZeckExpansion, s_z, zeck_expand, zeck_value

__version__ = "0.1.0"

__all__ = [
    "CheckReport",
    "Gbs",
    "GoldenInt",
    "Morphism",
    "PhiExpansion",
    "ZeckExpansion",
    "beta_expand",
    "beta_expand_rst",
    "beta_value",
    "classify",
    "fib",
    "fixed_point",
    "floor_mul_phi",
    "gbs_terms",
    "lucas",
    "merge_union",
    "parse_morphism",
    "phi_pow",
    "run_check",
    "s_beta",
    "s_z",
    "zeck_expand",
    "zeck_value",
]
