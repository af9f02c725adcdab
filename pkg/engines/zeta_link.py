"""
Zeta Link
- Multiplicative functions a, b and the coefficients c[s,j]
- h(s) = sum_j c[s,j] K[s, 2 pi sqrt(j)] against its zeta* zeta* closed form
- Taylor coefficients alpha_n of h at s = 1/2 from c-jets times K-jets

Every j-sum goes through pairwise_sum, so the reduction tree depends only
on j_max and never on the worker count.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from scipy import special

from .analytic_kernels import zeta_real
from .bessel_reference import bessel_k, richardson_derivative
from .numeric_defaults import section
from .order_derivatives import k_jet
from .taylor_jet import TaylorJet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FactoredInteger:
    """factors = ((p, e), ...) with ascending distinct primes"""

    factors: tuple[tuple[int, int], ...]

    @property
    def value(self) -> int:
        return math.prod(p ** e for p, e in self.factors)

    def divisors(self) -> list[int]:
        divs = [1]
        for p, e in self.factors:
            divs = [d * p ** i for d in divs for i in range(e + 1)]
        return sorted(divs)


@dataclass(frozen=True)
class CoefficientJet:
    j: int
    values: tuple[float, ...]

    def as_jet(self) -> TaylorJet:
        return TaylorJet.from_values(self.values)


@dataclass(frozen=True)
class AlphaBreakdown:
    """rows[j-1][n] = alpha_n(j); totals[n] = pairwise sum over j"""

    n_max: int
    j_max: int
    rows: tuple[tuple[float, ...], ...]
    totals: tuple[float, ...]
    tail_estimates: tuple[float, ...]


def factorize(j: int) -> FactoredInteger:
    """Trial division, adequate up to the configured factor_limit"""
    if j < 1:
        raise ValueError(f"j must be a positive integer, got {j}")
    limit = section("zeta")["factor_limit"]
    if j > limit:
        raise ValueError(f"j={j} exceeds factor_limit {limit}")
    factors = []
    n = j
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        factors.append((n, 1))
    return FactoredInteger(tuple(factors))


def _sigma1_prime_power(p: int, e: int) -> int:
    return (p ** (e + 1) - 1) // (p - 1)


def _a_prime_power(p: int, e: int) -> int:
    if e == 0:
        return 1
    return p ** e if p == 2 else _sigma1_prime_power(p, e)


def _b_prime_power(p: int, e: int) -> int:
    if e == 0:
        return 1
    return 0 if p == 2 else _sigma1_prime_power(p, e)


def a_fn(j: int) -> int:
    """a(2^m) = 2^m, a(p^e) = sigma_1(p^e) for odd p, extended multiplicatively"""
    return math.prod(_a_prime_power(p, e) for p, e in factorize(j).factors)


def b_fn(j: int) -> int:
    """b(2^m) = 0 for m > 0, b(p^e) = sigma_1(p^e) for odd p; zero on every even j"""
    return math.prod(_b_prime_power(p, e) for p, e in factorize(j).factors)


def c_coeff(s: float, j: int) -> float:
    """sum_{d|j} a(d) b(j/d) (j/d^2)^{s/2}"""
    terms = []
    for d in factorize(j).divisors():
        weight = a_fn(d) * b_fn(j // d)
        if weight:
            terms.append(weight * (j / (d * d)) ** (0.5 * s))
    return math.fsum(terms)


def zeta_star(s: float) -> float:
    """pi^{-s/2} Gamma(s/2) zeta(s)"""
    if s == 1.0:
        raise ValueError("zeta* has a pole at s = 1")
    return math.pi ** (-0.5 * s) * float(special.gamma(0.5 * s)) * zeta_real(s)


def pairwise_sum(values: Sequence[float]) -> float:
    """Fixed-tree reduction: split at the midpoint, sum both halves, add"""
    if not values:
        return 0.0
    if len(values) == 1:
        return float(values[0])
    mid = len(values) // 2
    return pairwise_sum(values[:mid]) + pairwise_sum(values[mid:])


def _ordered_map(fn: Callable, items: Sequence, workers: int) -> list:
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    results = [None] * len(items)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = {pool.submit(fn, item): i for i, item in enumerate(items)}
        for future, i in futures.items():
            results[i] = future.result()
    return results


def _bessel_argument(j: int) -> float:
    return 2.0 * math.pi * math.sqrt(j)


def h_partial(s: float, j_max: int, workers: int = 1) -> float:
    """sum_{j <= j_max} c[s,j] K[s, 2 pi sqrt(j)]"""
    if j_max < 0:
        raise ValueError(f"j_max must be nonnegative, got {j_max}")
    terms = _ordered_map(
        lambda j: c_coeff(s, j) * bessel_k(s, _bessel_argument(j)),
        list(range(1, j_max + 1)),
        workers,
    )
    return pairwise_sum(terms)


def h_closed(s: float) -> float:
    """
    s(s+1)/(32 pi^2 sqrt 2) (2^{s/2} - 2^{-s/2}) (2^{(s-1)/2} - 2^{-(s-1)/2}) zeta*(s) zeta*(s+1)

    Raises:
        ValueError: at s = 1, where a vanishing factor meets the pole of zeta*
    """
    if s == 1.0:
        raise ValueError("h_closed is not evaluated at s = 1 (zero factor times pole)")
    if not s > 0:
        raise ValueError(f"h_closed supports s > 0, got s={s}")
    prefactor = s * (s + 1.0) / (32.0 * math.pi ** 2 * math.sqrt(2.0))
    first = 2.0 * math.sinh(0.5 * s * math.log(2.0))
    second = 2.0 * math.sinh(0.5 * (s - 1.0) * math.log(2.0))
    return prefactor * first * second * zeta_star(s) * zeta_star(s + 1.0)


def prime_power_jet(p: int, e: int, n_max: int) -> TaylorJet:
    """
    Jet of c[s,p^e] at s = 1/2.

    Each divisor p^i contributes a(p^i) b(p^{e-i}) p^{(e-2i)s/2}, an
    exponential in s with rate (e-2i) Log p / 2.
    """
    if e < 0:
        raise ValueError(f"exponent must be nonnegative, got {e}")
    total = TaylorJet.constant(0.0, n_max)
    log_p = math.log(p)
    for i in range(e + 1):
        weight = _a_prime_power(p, i) * _b_prime_power(p, e - i)
        if weight == 0:
            continue
        rate = 0.5 * (e - 2 * i) * log_p
        total = total + TaylorJet.exponential(weight * math.exp(0.5 * rate), rate, n_max)
    return total


def coefficient_jet(j: int, n_max: int) -> CoefficientJet:
    jet = TaylorJet.constant(1.0, n_max)
    for p, e in factorize(j).factors:
        jet = jet * prime_power_jet(p, e, n_max)
    return CoefficientJet(j=j, values=jet.values)


def _check_alpha_order(n_max: int):
    limit = section("zeta")["alpha_n_max"]
    if not 0 <= n_max <= limit:
        raise ValueError(f"alpha order must be in [0, {limit}], got {n_max}")


def _alpha_row(j: int, n_max: int, tol: Optional[float]) -> tuple[float, ...]:
    c_jet = coefficient_jet(j, n_max).as_jet()
    return (c_jet * k_jet(n_max, _bessel_argument(j), tol)).values


def alpha_terms(
    n_max: int,
    j_max: Optional[int] = None,
    tol: Optional[float] = None,
    workers: int = 1,
) -> AlphaBreakdown:
    """
    alpha_n(j) for n = 0..n_max and j = 1..j_max with pairwise totals.

    The tail estimate treats the dropped terms as geometric with ratio
    e^{-pi/sqrt(j_max)}, the decay of K[s, 2 pi sqrt(j)] between neighbours.
    """
    _check_alpha_order(n_max)
    j_max = section("zeta")["j_max"] if j_max is None else j_max
    if j_max < 1:
        raise ValueError(f"j_max must be >= 1, got {j_max}")

    rows = _ordered_map(lambda j: _alpha_row(j, n_max, tol), list(range(1, j_max + 1)), workers)
    totals = tuple(pairwise_sum([row[n] for row in rows]) for n in range(n_max + 1))
    ratio = math.exp(-math.pi / math.sqrt(j_max))
    tails = tuple(abs(rows[-1][n]) * ratio / (1.0 - ratio) for n in range(n_max + 1))
    logger.debug(f"alpha sums to order {n_max} over j <= {j_max}: {totals}")
    return AlphaBreakdown(n_max=n_max, j_max=j_max, rows=tuple(rows), totals=totals, tail_estimates=tails)


def alpha_coeff(n: int, j_max: Optional[int] = None, tol: Optional[float] = None) -> float:
    """alpha_n = sum_j alpha_n(j), the n-th derivative of h at s = 1/2"""
    return alpha_terms(n, j_max, tol).totals[n]


def h_closed_derivative(n: int) -> float:
    """Finite-difference comparator for alpha_n: d^n/ds^n h_closed at s = 1/2"""
    if n == 0:
        return h_closed(0.5)
    return richardson_derivative(h_closed, 0.5, n).value
