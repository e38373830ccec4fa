"""Exact characteristic-class identity checking and conductor arithmetic."""

from .series import GradedSeries, MismatchError
from .lambda_ring import (
    KElement,
    TSeries,
    alternating_lambda_sum,
    ch,
    chern_k,
    gamma_k,
    gamma_t,
    lambda_k,
    lambda_t,
    todd,
    total_chern,
)
from .verify import (
    CheckResult,
    generic_lines,
    repeated_root_lines,
    top_degree_vanishes,
    verify_borel_serre,
    verify_ch_gamma,
    verify_gala,
    verify_hom_laws,
    verify_prop_chtd,
)
from .conductor import (
    ArithmeticModel,
    Component,
    ConductorReport,
    ConsistencyError,
    FiberModel,
    ModelValidationError,
    Stratum,
    TamenessError,
    bloch_degree,
    closed_strata_from_open,
    conductor,
    fiber_euler,
    generic_euler_check,
    normalize_fiber,
    open_strata_from_closed,
    tame_check,
)
from .modelfile import ModelParseError, load_model, parse_model

__all__ = [
    "ArithmeticModel",
    "CheckResult",
    "Component",
    "ConductorReport",
    "ConsistencyError",
    "FiberModel",
    "GradedSeries",
    "KElement",
    "MismatchError",
    "ModelParseError",
    "ModelValidationError",
    "Stratum",
    "TSeries",
    "TamenessError",
    "alternating_lambda_sum",
    "bloch_degree",
    "ch",
    "chern_k",
    "closed_strata_from_open",
    "conductor",
    "fiber_euler",
    "gamma_k",
    "gamma_t",
    "generic_euler_check",
    "generic_lines",
    "lambda_k",
    "lambda_t",
    "load_model",
    "normalize_fiber",
    "open_strata_from_closed",
    "parse_model",
    "repeated_root_lines",
    "tame_check",
    "todd",
    "top_degree_vanishes",
    "total_chern",
    "verify_borel_serre",
    "verify_ch_gamma",
    "verify_gala",
    "verify_hom_laws",
    "verify_prop_chtd",
]
