"""
Analytic Kernels
- Branch-cut jump polynomials p_n(w) and f[n,k,y] in real arithmetic
- Closed-form angular term A_1[n]
- Derivatives of Gamma at 1 by exponentiating the log-gamma series
- Real-axis zeta via the accelerated alternating (eta) series
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
from numpy.polynomial import polynomial as P

from .numeric_defaults import section

logger = logging.getLogger(__name__)

LOG2 = math.log(2.0)


@dataclass(frozen=True)
class PolynomialInW:
    """Dense real polynomial, coeffs[i] multiplies w**i"""

    coeffs: tuple[float, ...]

    @property
    def degree(self) -> int:
        nonzero = [i for i, c in enumerate(self.coeffs) if c != 0.0]
        return nonzero[-1] if nonzero else 0

    def __call__(self, w):
        return P.polyval(w, np.asarray(self.coeffs, dtype=float))


@dataclass(frozen=True)
class GammaJet:
    """values[n] = n-th derivative of Gamma at 1"""

    values: tuple[float, ...]

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def cancellation_residual(self) -> float:
        """2*Gamma''(1) - 2*Gamma'(1)**2 - 2*zeta(2)"""
        if self.n_max < 2:
            raise ValueError("cancellation needs derivatives up to order 2")
        return 2.0 * self.values[2] - 2.0 * self.values[1] ** 2 - 2.0 * zeta_real(2.0)


@lru_cache(maxsize=None)
def jump_poly_coeffs(m: int) -> tuple[float, ...]:
    """
    Coefficients of Im[(L + i*pi)**m] / pi as a polynomial in L.

    Only odd j contribute: C(m,j) * (-1)**((j-1)/2) * pi**(j-1) * L**(m-j).
    """
    if m < 0:
        raise ValueError(f"power must be nonnegative, got {m}")
    if m == 0:
        return (0.0,)
    coeffs = [0.0] * m
    for j in range(1, m + 1, 2):
        sign = -1.0 if (j - 1) // 2 % 2 else 1.0
        coeffs[m - j] += sign * math.comb(m, j) * math.pi ** (j - 1)
    return tuple(coeffs)


def p_poly(n: int) -> PolynomialInW:
    """
    Polynomial p_n with sum_{k<n} U**(n-1-k) V**k = p_n(w), U = w - i*pi, V = w + i*pi.

    Args:
        n: Order, n >= 1

    Returns:
        p_n(w) = Im[(w + i*pi)**n] / pi
    """
    if n < 1:
        raise ValueError(f"p_n is defined for n >= 1, got n={n}")
    return PolynomialInW(jump_poly_coeffs(n))


def f_real(n: int, k: int, L):
    """(1/2*pi*i) * f[n,k,y] with L = Log[y+1]; real for real L"""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    return P.polyval(L, np.asarray(jump_poly_coeffs(n - k)))


def f_real_dy(n: int, k: int, y):
    """(1/2*pi*i) * d/dy f[n,k,y] = (n-k) * f_real(n-1, k, Log[y+1]) / (y+1)"""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    y = np.asarray(y, dtype=float)
    if np.any(y <= -1.0):
        raise ValueError("f[n,k,y] needs y > -1")
    if n == k:
        return np.zeros_like(y)[()]
    return ((n - k) * f_real(n - 1, k, np.log1p(y)) / (1.0 + y))[()]


def a1_term(n: int) -> float:
    """Re (1/2pi) int_{-pi}^{pi} (Log 2 + i*phi)**n dphi in closed form"""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    total = 0.0
    for j in range(0, n + 1, 2):
        sign = -1.0 if (j // 2) % 2 else 1.0
        total += sign * math.comb(n, j) * LOG2 ** (n - j) * math.pi ** j / (j + 1)
    return total


def binomial_cancellation_holds(n_max: int = 30) -> bool:
    """k*C(n,k) == (n+1-k)*C(n,k-1) for all 1 <= k <= n <= n_max, in integers"""
    return all(
        k * math.comb(n, k) == (n + 1 - k) * math.comb(n, k - 1)
        for n in range(1, n_max + 1)
        for k in range(1, n + 1)
    )


def log_eps_residuals(n: int) -> list[float]:
    """
    Residual Log^k(eps) coefficients, k = 1..n, after adding the small-circle
    contribution to the integration-by-parts boundary term.

    Both carry the common factor e^{-x} * pi, dropped here.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    residuals = []
    for k in range(1, n + 1):
        jump = float(f_real(n, k - 1, LOG2))
        circle = math.comb(n, k) * jump / (n - k + 1)
        boundary = -math.comb(n, k - 1) * jump / k
        residuals.append(circle + boundary)
    return residuals


@lru_cache(maxsize=None)
def _gamma_values(n_max: int) -> tuple[float, ...]:
    # log Gamma(1+z) = -gamma*z + sum_{k>=2} (-1)^k zeta(k) z^k / k
    g = [0.0, -np.euler_gamma]
    g += [(-1.0) ** k * zeta_real(float(k)) / k for k in range(2, n_max + 1)]

    # exp of a power series: f_n = (1/n) sum_{k=1}^{n} k g_k f_{n-k}
    f = [1.0]
    for n in range(1, n_max + 1):
        f.append(sum(k * g[k] * f[n - k] for k in range(1, n + 1)) / n)
    return tuple(math.factorial(n) * f[n] for n in range(n_max + 1))


def gamma_derivs_at_one(n_max: int) -> GammaJet:
    """Gamma^(n)(1) for n = 0..n_max"""
    if n_max < 0:
        raise ValueError(f"n_max must be nonnegative, got {n_max}")
    return GammaJet(_gamma_values(n_max))


def gamma_cancellation_residual() -> float:
    return gamma_derivs_at_one(2).cancellation_residual()


def log_power_moment(b: int, x: float) -> float:
    """
    x * int_0^inf e^{-xu} Log^b[u] du in closed form.

    Args:
        b: Power of Log[u]
        x: Damping rate, x > 0

    Returns:
        sum_m C(b,m) Gamma^(m)(1) (-Log x)^(b-m)
    """
    if b < 0:
        raise ValueError(f"b must be nonnegative, got {b}")
    if x <= 0:
        raise ValueError(f"x must be positive, got {x}")
    gamma = gamma_derivs_at_one(b).values
    shift = -math.log(x)
    return math.fsum(math.comb(b, m) * gamma[m] * shift ** (b - m) for m in range(b + 1))


def zeta_real(s: float, terms: Optional[int] = None) -> float:
    """
    Riemann zeta on the real axis, s > 0, s != 1.

    eta(s) = sum (-1)^k / (k+1)^s is summed with the Cohen-Villegas-Zagier
    acceleration and divided by 1 - 2^(1-s).
    """
    if s == 1.0:
        raise ValueError("zeta has a pole at s = 1")
    if s <= 0.0:
        raise ValueError(f"zeta_real supports s > 0 only, got s={s}")
    n = terms or section("zeta")["eta_terms"]

    d = (3.0 + math.sqrt(8.0)) ** n
    d = (d + 1.0 / d) / 2.0
    b = -1.0
    c = -d
    total = 0.0
    for k in range(n):
        c = b - c
        total += c / (k + 1.0) ** s
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0))
    eta = total / d

    return eta / -math.expm1((1.0 - s) * LOG2)
