"""Inverse Laplace transforms of irrational functions as generalized functions."""

from .errors import (
    DivergentTransform,
    DomainError,
    IrrLaplaceError,
    NonConvergent,
    QuadratureFailure,
    StepTooCoarse,
    UnsupportedExpr,
)
from .generalized_functions import (
    ExpPowerTerm,
    GeneralizedFunction,
    MLTerm,
    PowerTerm,
    ShiftedPowerTerm,
    SingularTerm,
    eval_pointwise,
    eval_regular_part,
    eval_singular_as_function,
    format_gf,
    parse_gf,
    simplify,
)
from .inversion import Family, LaplaceExpr, forward_laplace, frac_derivative_power_law, invert
from .oracles import GLConfig, gl_differintegral, ml_series_hp
from .special_functions import EvalResult, MLParams, ml_eval, ml_one_param, rabotnov_eval, rgamma

__version__ = "0.1.0"
