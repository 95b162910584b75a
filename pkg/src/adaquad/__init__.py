"""Adaptive tensor-Gauss quadrature for integrands with sharp gradients and cusps."""

from .adaptive import (
    AdaptiveConfig,
    AdaptiveResult,
    build_adaptive_rule,
    integrate,
    integrate_with_rule,
    local_error,
)
from .errors import (
    AdaquadError,
    ConfigError,
    DegenerateCellError,
    DepthExceededError,
    InsufficientDataError,
    InvalidArgumentError,
    NonFiniteIntegrandError,
)
from .gauss_rules import Rule1D, RuleND, gauss_legendre_1d, reference_rule
from .geometry import Parallelepiped, map_rule, subdivide, volume
from .integrands import (
    Integrand,
    Interface2D,
    constant,
    default_interface,
    exp_cusp,
    gaussian_bump,
    heaviside_family,
    heaviside_integrand,
    linear_cusp,
    regularized_heaviside,
    signed_distance,
)
from .kernels import BACKEND
from .studies import (
    compare_strategies,
    efficiency_table,
    fit_rate,
    reference_integral,
    tensor_convergence_study,
)

__version__ = "0.1.0"
