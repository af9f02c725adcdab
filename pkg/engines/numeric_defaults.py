"""
Numeric defaults
- Single record of tolerances, step sizes and truncation limits
- Engines read their keyword defaults from here
- The CLI config layers user overrides on top of a deep copy
"""

NUMERIC_DEFAULTS = {
    # Laplace-type log integrals U[a,b,eps](x)
    "quadrature": {
        "tol": 1e-12,              # absolute
        "max_halvings": 12,
        "min_levels": 3,
        "initial_step": 0.5,
        "tanh_sinh_span": 4.5,     # |t| range of the [0, split] transform
        "exp_sinh_span": 4.5,      # lower t range of the [split, inf) transform
        "rounding_floor": 64.0,    # multiples of machine eps times the L1 norm
    },

    # cosh-integral representation of K[s,x]
    "bessel": {
        "step": 1.0 / 16.0,
        "tail_log_margin": 40.0,
        "max_refinements": 4,
        "rel_tol": 1e-13,
        "max_order": 30.0,
    },

    # Richardson-extrapolated central differences in the order s
    "finite_difference": {
        "base_step": 0.05,
        "halvings": 4,
        "max_rel_error": 1e-4,
    },

    "order_derivatives": {
        "n_max": 6,
    },

    "zeta": {
        "eta_terms": 40,
        "j_max": 60,
        "alpha_n_max": 4,
        "factor_limit": 10**6,
    },

    # Acceptance tolerances used by the verification suites
    "verification": {
        "theorem1_fd": 1e-7,
        "theorem1_closed": 1e-11,
        "theorem2_n1": 1e-11,
        "theorem2_n2": 1e-9,
        "theorem2_fd": 1e-5,
        "k_deriv1_fd": 1e-7,
        "quadrature_closed": 1e-10,
        "gamma_cancellation": 1e-12,
        "h_identity": 1e-9,
        "h_tail": 1e-11,           # j=41..60 carries up to 8e-12 relative at s=3
        "h_tail_kv": 1e-3,         # difference of two O(h) sums against a ~1e-12 h tail
        "h_truncation": 1e-12,
        "alpha_fd": 1e-5,
        "multiplicativity": 1e-12,
        "kernels": 1e-11,
        "a1_quadrature": 1e-10,
        "bessel_relation": 1e-11,
        "bessel_evenness": 1e-12,
        "error_estimate_factor": 3.0,
        "x_grid": [0.25, 0.5, 1.0, 2.0, 5.0, 10.0],
        "fd_x_grid": [0.5, 1.0, 2.0, 5.0],
        "fd_orders": [2, 3, 4],
        "h_identity_s": [1.5, 2.0, 2.5, 3.0, 4.0],
        "seed": 20171026,
    },
}


def section(name: str) -> dict:
    """Get one section of the defaults"""
    return NUMERIC_DEFAULTS[name]


def configure(overrides: dict):
    """Update numeric sections in place; unknown sections are ignored"""
    for name, values in overrides.items():
        if name in NUMERIC_DEFAULTS and isinstance(values, dict):
            NUMERIC_DEFAULTS[name].update(values)
