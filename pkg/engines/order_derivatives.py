"""
Order Derivatives at s = 1/2
- T[.5,x] and its first derivative (exponential-integral form)
- General d^n T / ds^n as (-1)^n T[.5,x] (A1 + A2 + A3 + A4)
- Explicit second derivative and the reduced K''/K after the Gamma cancellation
- K jets through the Leibniz product of the S, Gamma and T factor jets

A2..A4 are reduced to coefficient maps over U[a,b,eps] before any
quadrature. The jump terms (1/2*pi*i) f[n,k,u+1] are real for real u, so
no Re() is taken anywhere.
"""

import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping, Optional

import numpy as np

from .analytic_kernels import (
    LOG2,
    a1_term,
    gamma_derivs_at_one,
    jump_poly_coeffs,
    p_poly,
    zeta_real,
)
from .numeric_defaults import section
from .quadrature import QuadratureSpec, damped_log_poly_integral, exp_scaled_e1, u_integral
from .taylor_jet import TaylorJet, product

logger = logging.getLogger(__name__)

Coefficients = Mapping[tuple[int, int], float]


@dataclass(frozen=True)
class JumpTermMaps:
    """U[a,b,eps] coefficient maps; a2 and a4 use eps=1, a3 uses eps=0 and omits its factor x"""

    n: int
    a2: Coefficients
    a3: Coefficients
    a4: Coefficients


@dataclass(frozen=True)
class JumpTermValues:
    n: int
    x: float
    a1: float
    a2: float
    a3: float
    a4: float
    abs_error_estimate: float

    @property
    def bracket(self) -> float:
        return math.fsum((self.a1, self.a2, self.a3, self.a4))


def _tol(tol: Optional[float]) -> float:
    return section("quadrature")["tol"] if tol is None else tol


def _check_x(x: float):
    if not x > 0:
        raise ValueError(f"x must be positive, got {x}")


def _check_order(n: int, lowest: int = 1):
    n_max = section("order_derivatives")["n_max"]
    if not lowest <= n <= n_max:
        raise ValueError(f"order must be in [{lowest}, {n_max}], got {n}")


def t_half(x: float) -> float:
    """T[.5,x] = (pi/2) e^{-x}"""
    _check_x(x)
    return 0.5 * math.pi * math.exp(-x)


def k_half(x: float) -> float:
    """K[.5,x] = sqrt(pi/2x) e^{-x}"""
    _check_x(x)
    return math.sqrt(math.pi / (2.0 * x)) * math.exp(-x)


def t_deriv1(x: float) -> float:
    """(e^{2x} E1(2x) + Log x - Gamma'(1) - Log 2) T[.5,x]"""
    _check_x(x)
    bracket = exp_scaled_e1(2.0 * x) + math.log(x) + np.euler_gamma - LOG2
    return bracket * t_half(x)


def k_deriv1(x: float) -> float:
    """K[.5,x] int_0^inf e^{-u}/(u+2x) du, the logarithmic derivative being e^{2x} E1(2x)"""
    _check_x(x)
    return k_half(x) * exp_scaled_e1(2.0 * x)


@lru_cache(maxsize=None)
def jump_term_coefficient_maps(n: int) -> JumpTermMaps:
    """
    Expand A2, A3, A4 of order n into U[a,b,eps] coefficients.

    A2: -p_n(Log[u+2] + Log[u]) / (u+2), binomially expanded.
    A3: sum_k C(n,k)/(k+1) * f_real(n,k,Log[u+2]) * Log^{k+1}[u]      (times x)
    A4: -sum_k C(n,k)/(k+1) * (n-k) f_real(n-1,k,Log[u+2])/(u+2) * Log^{k+1}[u]
    """
    if n < 1:
        raise ValueError(f"jump terms need n >= 1, got {n}")
    a2: dict[tuple[int, int], float] = defaultdict(float)
    for m, pm in enumerate(p_poly(n).coeffs):
        if pm == 0.0:
            continue
        for a in range(m + 1):
            a2[(a, m - a)] -= pm * math.comb(m, a)

    a3: dict[tuple[int, int], float] = defaultdict(float)
    a4: dict[tuple[int, int], float] = defaultdict(float)
    for k in range(n):
        weight = math.comb(n, k) / (k + 1)
        for i, c in enumerate(jump_poly_coeffs(n - k)):
            if c != 0.0:
                a3[(i, k + 1)] += weight * c
        for i, c in enumerate(jump_poly_coeffs(n - 1 - k)):
            if c != 0.0:
                a4[(i, k + 1)] -= weight * (n - k) * c

    return JumpTermMaps(
        n=n,
        a2=MappingProxyType(dict(a2)),
        a3=MappingProxyType(dict(a3)),
        a4=MappingProxyType(dict(a4)),
    )


def jump_term_bracket(n: int, x: float, tol: Optional[float] = None) -> JumpTermValues:
    """A1..A4 of order n at x with a combined absolute error estimate"""
    _check_order(n)
    _check_x(x)
    settings = tuple(sorted(section("quadrature").items()))
    return _jump_term_bracket(n, x, _tol(tol), settings)


@lru_cache(maxsize=4096)
def _jump_term_bracket(n: int, x: float, tol: float, settings: tuple) -> JumpTermValues:
    # settings only keys the cache; the quadrature reads the live section
    maps = jump_term_coefficient_maps(n)

    a2 = damped_log_poly_integral(maps.a2, 1, x, tol)
    a3 = damped_log_poly_integral(maps.a3, 0, x, tol)
    a4 = damped_log_poly_integral(maps.a4, 1, x, tol)
    terms = JumpTermValues(
        n=n,
        x=x,
        a1=a1_term(n),
        a2=a2.value,
        a3=x * a3.value,
        a4=a4.value,
        abs_error_estimate=a2.abs_error_estimate + x * a3.abs_error_estimate + a4.abs_error_estimate,
    )
    logger.debug(f"Jump-term bracket n={n}, x={x:g}: {terms.bracket:.16e} +- {terms.abs_error_estimate:.1e}")
    return terms


def t_deriv_n(n: int, x: float, tol: Optional[float] = None) -> float:
    """
    d^n/ds^n T[s,x] at s = 1/2 from the A1..A4 decomposition.

    Args:
        n: Order, 1 <= n <= configured n_max
        x: Argument, x > 0
        tol: Absolute quadrature tolerance per U combination

    Returns:
        (-1)^n T[.5,x] (A1 + A2 + A3 + A4)

    Raises:
        QuadratureError: names the U[a,b,eps] term that failed to converge
    """
    terms = jump_term_bracket(n, x, _tol(tol))
    return (-1) ** n * t_half(x) * terms.bracket


def t_deriv2_explicit(x: float, tol: Optional[float] = None) -> float:
    """
    Second derivative with the two Log[u]/(u+2) integrals merged:
    Log^2 2 - 2 zeta(2) - 2U[1,0,1] - 4U[0,1,1] + 2x U[1,1,0] + x U[0,2,0], times T[.5,x].
    """
    _check_x(x)
    tol = _tol(tol)
    u = {
        key: u_integral(QuadratureSpec(*key, x=x), tol).value
        for key in ((1, 0, 1), (0, 1, 1), (1, 1, 0), (0, 2, 0))
    }
    bracket = math.fsum((
        LOG2 ** 2,
        -2.0 * zeta_real(2.0),
        -2.0 * u[(1, 0, 1)],
        -4.0 * u[(0, 1, 1)],
        2.0 * x * u[(1, 1, 0)],
        x * u[(0, 2, 0)],
    ))
    return t_half(x) * bracket


def t_jet_with_errors(n_max: int, x: float, tol: Optional[float] = None) -> tuple[TaylorJet, TaylorJet]:
    """T jet at s = 1/2 and the matching jet of absolute error estimates"""
    _check_order(n_max, lowest=0)
    _check_x(x)
    tol = _tol(tol)
    values = [t_half(x)]
    errors = [0.0]
    for n in range(1, n_max + 1):
        terms = jump_term_bracket(n, x, tol)
        values.append((-1) ** n * t_half(x) * terms.bracket)
        errors.append(t_half(x) * terms.abs_error_estimate)
    return TaylorJet.from_values(values), TaylorJet.from_values(errors)


def t_jet(n_max: int, x: float, tol: Optional[float] = None) -> TaylorJet:
    return t_jet_with_errors(n_max, x, tol)[0]


def _factor_jets(n_max: int, x: float) -> tuple[TaylorJet, TaylorJet]:
    # S = (2/x)^s and Gamma(s + 1/2), both at s = 1/2
    log_ratio = math.log(2.0 / x)
    s_jet = TaylorJet.exponential(math.sqrt(2.0 / x), log_ratio, n_max)
    gamma_jet = TaylorJet.from_values(gamma_derivs_at_one(n_max).values)
    return s_jet, gamma_jet


def k_jet_with_errors(n_max: int, x: float, tol: Optional[float] = None) -> tuple[TaylorJet, TaylorJet]:
    """K jet = (1/sqrt(pi)) S * Gamma * T by the Leibniz rule, with propagated error estimates"""
    _check_order(n_max, lowest=0)
    _check_x(x)
    if n_max >= 2:
        residual = gamma_derivs_at_one(2).cancellation_residual()
        if abs(residual) > section("verification")["gamma_cancellation"]:
            raise ArithmeticError(f"Gamma cancellation broken: residual {residual:.3e}")

    s_jet, gamma_jet = _factor_jets(n_max, x)
    t_values, t_errors = t_jet_with_errors(n_max, x, tol)
    scale = 1.0 / math.sqrt(math.pi)
    value = product((s_jet, gamma_jet, t_values), n_max).scaled(scale)
    error = product((s_jet.abs(), gamma_jet.abs(), t_errors), n_max).scaled(scale)
    return value, error


def k_jet(n_max: int, x: float, tol: Optional[float] = None) -> TaylorJet:
    """d^n/ds^n K[s,x] at s = 1/2 for n = 0..n_max"""
    return k_jet_with_errors(n_max, x, tol)[0]


def k_second_order_terms(x: float, tol: Optional[float] = None) -> dict[str, float]:
    """
    Split K''/K at s = 1/2 into the S, Gamma and T contributions.

    'gamma_cancellation' is the combination 2 Gamma''(1) - 2 Gamma'(1)^2 - 2 zeta(2)
    hidden inside Gamma''/Gamma + 2 (Gamma'/Gamma)(T'/T) + T''/T.
    """
    _check_x(x)
    g0, g1, g2 = gamma_derivs_at_one(2).values
    log_ratio = math.log(2.0 / x)
    t1 = t_deriv1(x) / t_half(x)
    t2 = t_deriv_n(2, x, tol) / t_half(x)
    terms = {
        "S": log_ratio ** 2,
        "Gamma": g2 / g0,
        "T": t2,
        "cross_S_Gamma": 2.0 * log_ratio * g1,
        "cross_S_T": 2.0 * log_ratio * t1,
        "cross_Gamma_T": 2.0 * g1 * t1,
        "gamma_cancellation": 2.0 * g2 - 2.0 * g1 ** 2 - 2.0 * zeta_real(2.0),
    }
    terms["total"] = math.fsum(v for k, v in terms.items() if k != "gamma_cancellation")
    return terms


def k_deriv2_reduced(x: float, tol: Optional[float] = None) -> float:
    """
    d^2/ds^2 K[s,x] at s = 1/2 with the Gamma terms already cancelled:

    K''/K = 2 Log2 Log x - 2 Gamma'(1) Log 2 + 2 e^{2x}E1(2x) (Log(2/x) + Gamma'(1))
            - 2U[1,0,1] - 4U[0,1,1] + 2x U[1,1,0]
    """
    _check_x(x)
    tol = _tol(tol)
    g1 = gamma_derivs_at_one(1).values[1]
    scaled_e1 = exp_scaled_e1(2.0 * x)
    damped = damped_log_poly_integral({(1, 0): -2.0, (0, 1): -4.0}, 1, x, tol).value
    mixed = u_integral(QuadratureSpec(1, 1, 0, x), tol).value
    ratio = math.fsum((
        2.0 * LOG2 * math.log(x),
        -2.0 * g1 * LOG2,
        2.0 * scaled_e1 * (math.log(2.0 / x) + g1),
        damped,
        2.0 * x * mixed,
    ))
    return k_half(x) * ratio
