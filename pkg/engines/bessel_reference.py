"""
Bessel Reference
- K[s,x] from the cosh integral int_0^inf e^{-x cosh t} cosh(s t) dt
- T[s,x] from K through the cosine-integral relation
- Richardson-extrapolated central differences in the order s

Nothing here uses the closed forms that the order-derivative engine
produces, so every value can serve as an oracle for it.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy import special

from .numeric_defaults import section

logger = logging.getLogger(__name__)

TARGETS = ("T", "K")


@dataclass(frozen=True)
class OrderDerivativeRequest:
    """d^n/ds^n of the T-kernel or of K at s = 1/2"""

    n: int
    x: float
    target: str = "K"

    def __post_init__(self):
        n_max = section("order_derivatives")["n_max"]
        if not 0 <= self.n <= n_max:
            raise ValueError(f"derivative order must be in [0, {n_max}], got {self.n}")
        if not self.x > 0:
            raise ValueError(f"x must be positive, got {self.x}")
        if self.target not in TARGETS:
            raise ValueError(f"target must be one of {TARGETS}, got {self.target!r}")


@dataclass(frozen=True)
class RichardsonResult:
    value: float
    error_estimate: float
    step: float
    column: int


class LossOfSignificanceError(ArithmeticError):
    """Successive Richardson levels stopped agreeing before reaching the target accuracy"""

    def __init__(self, message: str, best: RichardsonResult):
        super().__init__(message)
        self.best = best


def _cosh_tail(s: float, x: float, margin: float) -> float:
    """First t past the peak where the integrand fell by e^{-margin}"""
    s = abs(s)
    peak = math.asinh(s / x)
    top = -x * math.cosh(peak) + s * peak
    t = peak + 0.25
    while -x * math.cosh(t) + s * t > top - margin:
        t += 0.25
    return t


def _cosh_trapezoid(s: float, x: float, h: float, t_max: float) -> tuple[float, float]:
    t = np.arange(0, math.floor(t_max / h) + 1) * h
    a = -x * np.cosh(t)
    f = 0.5 * (np.exp(a + s * t) + np.exp(a - s * t))
    f[0] *= 0.5
    fine = h * math.fsum(f)
    coarse = 2.0 * h * math.fsum(f[::2])
    return fine, coarse


def bessel_k(s: float, x: float) -> float:
    """
    Modified Bessel function of the second kind for real order.

    Args:
        s: Order, |s| <= configured max_order
        x: Argument, x > 0

    Returns:
        K[s,x] to about 1e-13 relative
    """
    cfg = section("bessel")
    if not x > 0:
        raise ValueError(f"bessel_k needs x > 0, got {x}")
    if abs(s) > cfg["max_order"]:
        raise ValueError(f"|s| must not exceed {cfg['max_order']}, got {s}")

    t_max = _cosh_tail(s, x, cfg["tail_log_margin"])
    h = cfg["step"]
    for _ in range(cfg["max_refinements"] + 1):
        fine, coarse = _cosh_trapezoid(s, x, h, t_max)
        if abs(fine - coarse) <= cfg["rel_tol"] * abs(fine):
            return fine
        h /= 2.0
    logger.warning(f"bessel_k trapezoid still refining at s={s:g}, x={x:g}")
    return fine


def t_kernel(s: float, x: float) -> float:
    """T[s,x] = sqrt(pi) (x/2)^s K[s,x] / Gamma(s + 1/2)"""
    if not s > -0.5:
        raise ValueError(f"T[s,x] is defined for s > -1/2, got s={s}")
    if not x > 0:
        raise ValueError(f"t_kernel needs x > 0, got {x}")
    return math.sqrt(math.pi) * (x / 2.0) ** s * bessel_k(s, x) / float(special.gamma(s + 0.5))


def central_difference(f: Callable[[float], float], s0: float, n: int, h: float) -> float:
    """n-th central difference quotient; its error expands in even powers of h"""
    return math.fsum(
        (-1) ** i * math.comb(n, i) * f(s0 + (0.5 * n - i) * h) for i in range(n + 1)
    ) / h ** n


def richardson_derivative(
    f: Callable[[float], float],
    s0: float,
    n: int,
    base_step: Optional[float] = None,
    halvings: Optional[int] = None,
    max_rel_error: Optional[float] = None,
) -> RichardsonResult:
    """
    n-th derivative of f at s0 by central differences and Richardson extrapolation.

    The tableau is built on halved steps; the entry with the smallest
    error estimate wins, and building stops once the diagonal moves away
    from it (rounding has taken over).

    Raises:
        LossOfSignificanceError: best error estimate above max_rel_error * |value|
    """
    cfg = section("finite_difference")
    base_step = cfg["base_step"] if base_step is None else base_step
    halvings = cfg["halvings"] if halvings is None else halvings
    max_rel_error = cfg["max_rel_error"] if max_rel_error is None else max_rel_error
    if n < 1:
        raise ValueError(f"finite differences need n >= 1, got {n}")

    tableau: list[list[float]] = []
    best = None
    for i in range(halvings + 1):
        h = base_step / 2 ** i
        row = [central_difference(f, s0, n, h)]
        for k in range(1, i + 1):
            row.append(row[k - 1] + (row[k - 1] - tableau[i - 1][k - 1]) / (4 ** k - 1))
            err = max(abs(row[k] - row[k - 1]), abs(row[k] - tableau[i - 1][k - 1]))
            if best is None or err <= best.error_estimate:
                best = RichardsonResult(row[k], err, h, k)
        if i > 0 and abs(row[i] - tableau[i - 1][i - 1]) >= 2.0 * best.error_estimate:
            logger.debug(f"Richardson diagonal diverging at h={h:g}, keeping column {best.column}")
            break
        tableau.append(row)

    if best is None:
        best = RichardsonResult(tableau[0][0], math.inf, base_step, 0)
    if best.error_estimate > max_rel_error * abs(best.value):
        logger.warning(f"Richardson lost significance: {best.value:.6e} +- {best.error_estimate:.1e}")
        raise LossOfSignificanceError(
            f"order-{n} difference unreliable: estimate {best.error_estimate:.2e} "
            f"vs value {best.value:.6e}",
            best,
        )
    return best


def fd_order_derivative(req: OrderDerivativeRequest) -> float:
    """Finite-difference oracle for d^n/ds^n T or K at s = 1/2"""
    if req.n < 1:
        raise ValueError(f"finite differences need n >= 1, got {req.n}")
    if req.target == "K":
        f = lambda s: bessel_k(s, req.x)
    else:
        f = lambda s: t_kernel(s, req.x)
    return richardson_derivative(f, 0.5, req.n).value
