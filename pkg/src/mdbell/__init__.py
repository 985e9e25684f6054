"""Measurement-dependent locally causal models of the CHSH Bell test.

Construct, measure, and verify hidden-variable models that trade
experimenters' freedom of choice for CHSH violations: relaxed closed-form
bounds, explicit saturating model families, mutual-information costs, and
an exact linear-programming oracle that independently confirms every
bound is tight.
"""

from .bounds import (
    TSIRELSON_S,
    TSIRELSON_VIOLATION,
    FeasibilityCheck,
    InfeasibleParamsError,
    ModelParams,
    bound_banik,
    bound_four_param,
    bound_hall,
    bound_two_param,
    check_inequality_chain,
    check_param_feasible,
    v_g,
)
from .constructors import (
    banik_model,
    four_param_model,
    hall_model,
    interp_model,
    two_param_model,
)
from .info import (
    InfoCurvePoint,
    entropy_term,
    i_banik,
    i_banik_closed_form,
    i_four,
    i_four_direct,
    i_g,
    i_g_min,
    i_hall,
    i_interp,
    i_interp_min,
    i_interp_slice,
    minimize_scalar,
    mutual_information,
)
from .measures import (
    DependenceReport,
    chsh_s,
    correlation,
    distinguish_probability,
    measurement_dependence,
    variational_distance,
)
from .model import (
    ConditionalTable,
    HiddenVariableModel,
    InvalidModelError,
    ModelError,
    OutcomeTable,
    Party,
    SettingLabel,
    SettingsDistribution,
    ValidationReport,
    Variant,
    Violation,
    load_model,
    marginal_lambda,
    model_from_dict,
    model_from_json,
    model_to_dict,
    model_to_json,
    save_model,
    swap_parties,
    validate_model,
)
from .oracle import (
    OracleResult,
    StrategyAtom,
    canonical_strategies,
    check_sign_conditions,
    max_s_four_param,
    max_s_two_param,
)
from .simplex import LinearProgram, LpSolution, lp_solve

__version__ = "0.1.0"

__all__ = [
    "TSIRELSON_S",
    "TSIRELSON_VIOLATION",
    "ConditionalTable",
    "DependenceReport",
    "FeasibilityCheck",
    "HiddenVariableModel",
    "InfeasibleParamsError",
    "InfoCurvePoint",
    "InvalidModelError",
    "LinearProgram",
    "LpSolution",
    "ModelError",
    "ModelParams",
    "OracleResult",
    "OutcomeTable",
    "Party",
    "SettingLabel",
    "SettingsDistribution",
    "StrategyAtom",
    "ValidationReport",
    "Variant",
    "Violation",
    "banik_model",
    "bound_banik",
    "bound_four_param",
    "bound_hall",
    "bound_two_param",
    "canonical_strategies",
    "check_inequality_chain",
    "check_param_feasible",
    "check_sign_conditions",
    "chsh_s",
    "correlation",
    "distinguish_probability",
    "entropy_term",
    "four_param_model",
    "hall_model",
    "i_banik",
    "i_banik_closed_form",
    "i_four",
    "i_four_direct",
    "i_g",
    "i_g_min",
    "i_hall",
    "i_interp",
    "i_interp_min",
    "i_interp_slice",
    "interp_model",
    "load_model",
    "lp_solve",
    "marginal_lambda",
    "max_s_four_param",
    "max_s_two_param",
    "measurement_dependence",
    "minimize_scalar",
    "model_from_dict",
    "model_from_json",
    "model_to_dict",
    "model_to_json",
    "mutual_information",
    "save_model",
    "swap_parties",
    "two_param_model",
    "v_g",
    "validate_model",
    "variational_distance",
]
