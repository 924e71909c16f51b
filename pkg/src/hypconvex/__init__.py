"""Shifted Gauss hypergeometric maps: slit-plane evaluation, sector geometry,
order of convexity, and universal-convexity certification."""

__version__ = "0.1.0"

from .errors import (
    DegenerateError,
    DivisionBreakdown,
    DivisionByZero,
    DomainError,
    EvaluationError,
    HypothesisError,
    NearZeroDerivative,
    PoleError,
    UnsupportedParams,
)
from .gammafn import digamma, gamma_real, rgamma_real
from .params import ParamTriple
from .hyp2f1 import (
    Region,
    SlitPoint,
    Strategy,
    hyp2f1,
    hyp2f1_derivatives,
    hyp2f1_params,
    preschwarzian,
    shifted_f,
    shifted_f_jet,
    shifted_g,
)

__all__ = [
    "DegenerateError",
    "DivisionBreakdown",
    "DivisionByZero",
    "DomainError",
    "EvaluationError",
    "HypothesisError",
    "NearZeroDerivative",
    "ParamTriple",
    "PoleError",
    "Region",
    "SlitPoint",
    "Strategy",
    "UnsupportedParams",
    "digamma",
    "gamma_real",
    "hyp2f1",
    "hyp2f1_derivatives",
    "hyp2f1_params",
    "preschwarzian",
    "rgamma_real",
    "shifted_f",
    "shifted_f_jet",
    "shifted_g",
    "__version__",
]
