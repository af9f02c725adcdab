"""
Core engines for Bessel-K order derivatives at s = 1/2
"""

from .numeric_defaults import NUMERIC_DEFAULTS, configure, section
from .analytic_kernels import (
    PolynomialInW,
    GammaJet,
    p_poly,
    f_real,
    f_real_dy,
    a1_term,
    binomial_cancellation_holds,
    log_eps_residuals,
    gamma_derivs_at_one,
    gamma_cancellation_residual,
    log_power_moment,
    zeta_real,
)
from .quadrature import (
    QuadratureSpec,
    QuadratureResult,
    QuadratureError,
    u_integral,
    damped_log_poly_integral,
    exp_scaled_e1,
    exp_integral_e1,
)
from .bessel_reference import (
    OrderDerivativeRequest,
    RichardsonResult,
    LossOfSignificanceError,
    bessel_k,
    t_kernel,
    richardson_derivative,
    fd_order_derivative,
)
from .taylor_jet import TaylorJet, product
from .order_derivatives import (
    JumpTermMaps,
    JumpTermValues,
    t_half,
    k_half,
    t_deriv1,
    k_deriv1,
    jump_term_coefficient_maps,
    jump_term_bracket,
    t_deriv_n,
    t_deriv2_explicit,
    t_jet,
    k_jet,
    k_jet_with_errors,
    k_deriv2_reduced,
    k_second_order_terms,
)
from .zeta_link import (
    FactoredInteger,
    CoefficientJet,
    AlphaBreakdown,
    factorize,
    a_fn,
    b_fn,
    c_coeff,
    zeta_star,
    h_partial,
    h_closed,
    prime_power_jet,
    coefficient_jet,
    pairwise_sum,
    alpha_terms,
    alpha_coeff,
    h_closed_derivative,
)
from .verification import SUITE_NAMES, VerificationReport, run_suite

__all__ = [
    # Configuration
    "NUMERIC_DEFAULTS",
    "configure",
    "section",
    # Analytic kernels
    "PolynomialInW",
    "GammaJet",
    "p_poly",
    "f_real",
    "f_real_dy",
    "a1_term",
    "binomial_cancellation_holds",
    "log_eps_residuals",
    "gamma_derivs_at_one",
    "gamma_cancellation_residual",
    "log_power_moment",
    "zeta_real",
    # Quadrature
    "QuadratureSpec",
    "QuadratureResult",
    "QuadratureError",
    "u_integral",
    "damped_log_poly_integral",
    "exp_scaled_e1",
    "exp_integral_e1",
    # Bessel reference
    "OrderDerivativeRequest",
    "RichardsonResult",
    "LossOfSignificanceError",
    "bessel_k",
    "t_kernel",
    "richardson_derivative",
    "fd_order_derivative",
    # Jets
    "TaylorJet",
    "product",
    # Order derivatives
    "JumpTermMaps",
    "JumpTermValues",
    "t_half",
    "k_half",
    "t_deriv1",
    "k_deriv1",
    "jump_term_coefficient_maps",
    "jump_term_bracket",
    "t_deriv_n",
    "t_deriv2_explicit",
    "t_jet",
    "k_jet",
    "k_jet_with_errors",
    "k_deriv2_reduced",
    "k_second_order_terms",
    # Zeta link
    "FactoredInteger",
    "CoefficientJet",
    "AlphaBreakdown",
    "factorize",
    "a_fn",
    "b_fn",
    "c_coeff",
    "zeta_star",
    "h_partial",
    "h_closed",
    "prime_power_jet",
    "coefficient_jet",
    "pairwise_sum",
    "alpha_terms",
    "alpha_coeff",
    "h_closed_derivative",
    # Verification
    "SUITE_NAMES",
    "VerificationReport",
    "run_suite",
]
