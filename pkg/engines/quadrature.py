"""
Quadrature Engine
- U[a,b,eps](x) = int_0^inf e^{-xu} Log^a[u+2] Log^b[u] (u+2)^{-eps} du
- Linear combinations of U terms in a single pass on a shared mesh
- Exponential integral E1 (series / continued fraction)

The half line is split at u = min(1, 1/x). The left piece uses a tanh-sinh
map that swallows the Log^b[u] endpoint singularity, the right piece an
exp-sinh map scaled by 1/x. All logarithms are formed from the transformed
variable directly so nodes near u = 0 keep full relative accuracy.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from .numeric_defaults import section

logger = logging.getLogger(__name__)

EPS = np.finfo(float).eps


@dataclass(frozen=True)
class QuadratureSpec:
    """Descriptor of one U[a,b,eps](x) integral"""

    a: int
    b: int
    eps: int
    x: float

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError(f"powers must be nonnegative, got a={self.a}, b={self.b}")
        if self.eps not in (0, 1):
            raise ValueError(f"eps must be 0 or 1, got {self.eps}")
        if not self.x > 0:
            raise ValueError(f"x must be positive, got {self.x}")

    @property
    def label(self) -> str:
        return f"U[{self.a},{self.b},{self.eps}]"


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    evaluations: int


class QuadratureError(RuntimeError):
    """Refinement cap reached with the error estimate still above tol"""

    def __init__(self, message: str, best: QuadratureResult, term: Optional[tuple[int, int, int]] = None):
        super().__init__(message)
        self.best = best
        self.term = term


@dataclass
class _Mesh:
    """Transformed nodes for one mesh level, both pieces concatenated"""

    log_u: np.ndarray
    log_u2: np.ndarray
    log_weight: np.ndarray   # log of e^{-xu} * du/dt * h, before (u+2)^{-eps}
    u_plus_2: np.ndarray
    size: int = field(init=False)

    def __post_init__(self):
        self.size = self.log_u.size


def _left_nodes(t: np.ndarray, split: float, x: float, h: float):
    # u = split * sigma(z), z = pi*sinh(t)
    z = math.pi * np.sinh(t)
    log_sigma = -np.logaddexp(0.0, -z)
    log_one_minus = -np.logaddexp(0.0, z)
    log_u = math.log(split) + log_sigma
    u = np.exp(log_u)
    log_jac = math.log(split * math.pi * h) + log_sigma + log_one_minus + np.log(np.cosh(t))
    return log_u, np.log(u + 2.0), -x * u + log_jac, u + 2.0


def _right_nodes(t: np.ndarray, split: float, x: float, h: float):
    # u = split + e^g / x, g = (pi/2) sinh(t)
    g = 0.5 * math.pi * np.sinh(t)
    shifted = g - math.log(x)
    log_u = np.logaddexp(math.log(split), shifted)
    log_u2 = np.logaddexp(math.log(split + 2.0), shifted)
    log_jac = shifted + math.log(0.5 * math.pi * h) + np.log(np.cosh(t))
    return log_u, log_u2, -x * split - np.exp(g) + log_jac, np.exp(log_u2)


def _tail_bound(degree: int, x: float, u: float) -> float:
    """Majorant of int_u^inf e^{-xv} Log^degree[v+2] dv, valid when growth < decay/2"""
    lg = math.log(u + 2.0)
    if x * (u + 2.0) * lg < 2.0 * degree:
        return math.inf
    return 2.0 * math.exp(-x * u) * lg ** degree / x


def _upper_cutoff(degree: int, x: float, split: float, target: float) -> float:
    u_max = split + 1.0 / x
    while _tail_bound(degree, x, u_max) >= target:
        u_max = 1.5 * u_max + 1.0 / x
    return u_max


def _build_mesh(x: float, h: float, t_left: float, t_lo: float, t_hi: float) -> _Mesh:
    split = min(1.0, 1.0 / x)
    k_left = np.arange(-math.floor(t_left / h), math.floor(t_left / h) + 1)
    k_right = np.arange(math.ceil(t_lo / h), math.floor(t_hi / h) + 1)
    left = _left_nodes(k_left * h, split, x, h)
    right = _right_nodes(k_right * h, split, x, h)
    return _Mesh(*(np.concatenate(pair) for pair in zip(left, right)))


def _integrand_sum(mesh: _Mesh, coeffs: Mapping[tuple[int, int], float], eps: int):
    """Weighted sum and its L1 norm for the polynomial sum_{a,b} c_ab La^a Lb^b"""
    poly = np.zeros(mesh.size)
    for (a, b), c in coeffs.items():
        if c != 0.0:
            poly += c * mesh.log_u2 ** a * mesh.log_u ** b
    weight = np.exp(mesh.log_weight)
    if eps:
        weight = weight / mesh.u_plus_2
    terms = weight * poly
    return math.fsum(terms), float(np.sum(np.abs(terms)))


def _integrate(
    coeffs: Mapping[tuple[int, int], float],
    eps: int,
    x: float,
    tol: float,
    cfg: Optional[dict] = None,
) -> QuadratureResult:
    cfg = cfg or section("quadrature")
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    if not x > 0:
        raise ValueError(f"x must be positive, got {x}")

    live = {key: float(c) for key, c in coeffs.items() if c != 0.0}
    if not live:
        return QuadratureResult(0.0, 0.0, 0)
    degree = max(a + b for a, b in live)
    scale = sum(abs(c) for c in live.values())

    split = min(1.0, 1.0 / x)
    u_max = _upper_cutoff(degree, x, split, tol / (10.0 * scale))
    t_hi = math.asinh(2.0 / math.pi * math.log(max(x * (u_max - split), 1.0 + 1e-12)))
    t_left = cfg["tanh_sinh_span"]
    t_lo = -cfg["exp_sinh_span"]

    h = cfg["initial_step"]
    previous = None
    evaluations = 0
    best = None
    for level in range(cfg["max_halvings"] + 1):
        mesh = _build_mesh(x, h, t_left, t_lo, t_hi)
        value, l1 = _integrand_sum(mesh, live, eps)
        evaluations += mesh.size
        floor = cfg["rounding_floor"] * EPS * l1
        if previous is not None:
            estimate = max(abs(value - previous), floor)
            best = QuadratureResult(value, estimate, evaluations)
            if level >= cfg["min_levels"] and estimate <= max(tol, floor):
                logger.debug(f"Quadrature converged at h={h:g} (est {estimate:.2e}, {evaluations} evals)")
                return best
        previous = value
        h /= 2.0

    terms = ", ".join(f"U[{a},{b},{eps}]" for a, b in sorted(live))
    logger.warning(f"Quadrature refinement cap reached for {terms} at x={x:g}")
    raise QuadratureError(
        f"no convergence for {terms} at x={x:g}: estimate {best.abs_error_estimate:.3e} > tol {tol:.3e}",
        best=best,
    )


def u_integral(spec: QuadratureSpec, tol: Optional[float] = None) -> QuadratureResult:
    """
    Evaluate U[a,b,eps](x).

    Args:
        spec: Integral descriptor
        tol: Absolute tolerance (None for the configured default)

    Returns:
        Value with a nested-refinement error estimate
    """
    tol = section("quadrature")["tol"] if tol is None else tol
    try:
        return _integrate({(spec.a, spec.b): 1.0}, spec.eps, spec.x, tol)
    except QuadratureError as e:
        raise QuadratureError(str(e), best=e.best, term=(spec.a, spec.b, spec.eps)) from None


def damped_log_poly_integral(
    coeffs: Mapping[tuple[int, int], float],
    eps: int,
    x: float,
    tol: Optional[float] = None,
) -> QuadratureResult:
    """
    Evaluate sum_{(a,b)} coeffs[a,b] * U[a,b,eps](x) in one pass.

    On failure every term is retried on its own so the error names the
    offending U[a,b,eps].
    """
    if eps not in (0, 1):
        raise ValueError(f"eps must be 0 or 1, got {eps}")
    tol = section("quadrature")["tol"] if tol is None else tol
    try:
        return _integrate(coeffs, eps, x, tol)
    except QuadratureError as e:
        worst = None
        for (a, b), c in sorted(coeffs.items()):
            if c == 0.0:
                continue
            try:
                single = _integrate({(a, b): 1.0}, eps, x, tol / max(len(coeffs), 1))
            except QuadratureError as inner:
                raise QuadratureError(str(inner), best=e.best, term=(a, b, eps)) from None
            weighted = abs(c) * single.abs_error_estimate
            if worst is None or weighted > worst[0]:
                worst = (weighted, (a, b, eps))
        term = worst[1] if worst else None
        label = f"U[{term[0]},{term[1]},{term[2]}]" if term else "combination"
        raise QuadratureError(f"{e} (largest contribution from {label})", best=e.best, term=term) from None


def _e1_series(z: float) -> float:
    # E1(z) = -gamma - ln z - sum_{k>=1} (-z)^k / (k k!)
    total = 0.0
    term = 1.0
    for k in range(1, 200):
        term *= -z / k
        contribution = term / k
        total += contribution
        if abs(contribution) < EPS * abs(total):
            break
    return -np.euler_gamma - math.log(z) - total


def _e1_scaled_fraction(z: float) -> float:
    # modified Lentz for e^z E1(z) = 1/(z+1- 1/(z+3- 4/(z+5- ...)))
    tiny = 1e-300
    b = z + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    result = d
    for i in range(1, 500):
        an = -float(i * i)
        b += 2.0
        d = 1.0 / (an * d + b)
        c = b + an / c
        delta = c * d
        result *= delta
        if abs(delta - 1.0) < EPS:
            return result
    logger.warning(f"E1 continued fraction did not settle at z={z:g}")
    return result


def exp_scaled_e1(z: float) -> float:
    """e^z * E1(z), finite for large z"""
    if not z > 0:
        raise ValueError(f"E1 needs z > 0, got {z}")
    if z <= 1.0:
        return math.exp(z) * _e1_series(z)
    return _e1_scaled_fraction(z)


def exp_integral_e1(z: float) -> float:
    """E1(z) = int_z^inf e^{-t}/t dt for z > 0"""
    if not z > 0:
        raise ValueError(f"E1 needs z > 0, got {z}")
    if z <= 1.0:
        return _e1_series(z)
    return math.exp(-z) * _e1_scaled_fraction(z)
