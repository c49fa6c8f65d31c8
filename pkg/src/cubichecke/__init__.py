"""Cubic Hecke characters over Z[i] and Z[zeta_12].

Exact arithmetic in both rings, the cubic residue symbol, cubic Gauss sums,
central L-values, Gauss-sum Dirichlet series, moment experiments and the
cubic large sieve.
"""

__version__ = "0.1.0"

from .characters import (
    CubicCharacter,
    HeckePsi,
    Lambda18,
    enumerate_cubic_chars,
    lambda_from_generators,
)
from .constants import ConstantsBundle, Estimate, default_constants
from .cyclo import CycloInt, parse_cyclo
from .cyclo_ideals import enumerate_ideals_f, factor_f, primary_choice
from .gauss import gauss_fast_g3, gauss_g3, gauss_gk
from .gaussian import GaussInt, factor_k, parse_gauss
from .hseries import HSeriesQuery, h_partial, laundrylist_check
from .lfunctions import (
    AFEConfig,
    LValueResult,
    lvalue_afe,
    lvalue_direct,
    lvalue_psi_afe,
    poisson_check,
)
from .moments import (
    WeightFn,
    first_moment,
    nonvanishing_count,
    second_moment_chi,
    second_moment_psi,
)
from .sieve import SieveInstance, bilinear_lhs, norm_B, norm_C1, sieve_scan
from .symbol import CubicValue, symbol, symbol_def, symbol_fast

__all__ = [
    "AFEConfig",
    "ConstantsBundle",
    "CubicCharacter",
    "CubicValue",
    "CycloInt",
    "Estimate",
    "GaussInt",
    "HSeriesQuery",
    "HeckePsi",
    "LValueResult",
    "Lambda18",
    "SieveInstance",
    "WeightFn",
    "bilinear_lhs",
    "default_constants",
    "enumerate_cubic_chars",
    "enumerate_ideals_f",
    "factor_f",
    "factor_k",
    "first_moment",
    "gauss_fast_g3",
    "gauss_g3",
    "gauss_gk",
    "h_partial",
    "lambda_from_generators",
    "laundrylist_check",
    "lvalue_afe",
    "lvalue_direct",
    "lvalue_psi_afe",
    "nonvanishing_count",
    "norm_B",
    "norm_C1",
    "parse_cyclo",
    "parse_gauss",
    "poisson_check",
    "primary_choice",
    "second_moment_chi",
    "second_moment_psi",
    "sieve_scan",
    "symbol",
    "symbol_def",
    "symbol_fast",
]
