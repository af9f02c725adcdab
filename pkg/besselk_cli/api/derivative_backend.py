"""
Derivative Backend
Main coordinator between the command line and the engines

- eval / table: T and K order derivatives with error estimates
- verify: oracle suites as VerificationReport lists
- alpha: Taylor coefficients of h(s) at s = 1/2 with FD comparators
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional, Sequence

from engines.bessel_reference import LossOfSignificanceError, OrderDerivativeRequest, bessel_k, fd_order_derivative
from engines.numeric_defaults import NUMERIC_DEFAULTS, configure
from engines.order_derivatives import (
    k_deriv1,
    k_half,
    k_jet_with_errors,
    t_deriv1,
    t_deriv_n,
    t_half,
)
from engines.verification import VerificationReport, run_suite
from engines.zeta_link import alpha_terms, h_closed_derivative

logger = logging.getLogger(__name__)


class DerivativeBackend:
    """Main backend coordinator for the command line"""

    def __init__(self, config: dict):
        self.config = config
        configure({name: config[name] for name in NUMERIC_DEFAULTS if name in config})

        self.tol = config["quadrature"]["tol"]
        self.workers = max(1, int(config.get("parallel", {}).get("workers", 1)))
        self.j_max = config["zeta"]["j_max"]
        self.n_max = config["order_derivatives"]["n_max"]
        self.alpha_n_max = config["zeta"]["alpha_n_max"]

    def _map(self, fn: Callable, items: Sequence) -> list:
        """Ordered map, threaded when workers > 1"""
        if self.workers <= 1 or len(items) <= 1:
            return [fn(item) for item in items]
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            return list(pool.map(fn, items))

    def _check_order(self, n: int, limit: int, name: str = "n"):
        if not 0 <= n <= limit:
            raise ValueError(f"{name} must be in [0, {limit}], got {n}")

    # ========== Order derivatives ==========

    def derivative_pair(self, n: int, x: float) -> dict:
        """
        dn T/ds^n and dn K/ds^n at s = 1/2.

        error_estimate is the absolute estimate on the K derivative; the
        closed forms at n = 0 and n = 1 carry 0.0.
        """
        self._check_order(n, self.n_max)
        if n == 0:
            t_value, k_value, error = t_half(x), k_half(x), 0.0
        elif n == 1:
            t_value, k_value, error = t_deriv1(x), k_deriv1(x), 0.0
        else:
            t_value = t_deriv_n(n, x, self.tol)
            k_values, k_errors = k_jet_with_errors(n, x, self.tol)
            k_value, error = k_values[n], k_errors[n]
        return {
            "x": float(x),
            "n": int(n),
            "t_derivative": t_value,
            "k_derivative": k_value,
            "error_estimate": error,
        }

    def oracle(self, n: int, x: float) -> float:
        """Reference value of dn K/ds^n independent of the closed forms"""
        if n == 0:
            return bessel_k(0.5, x)
        try:
            return fd_order_derivative(OrderDerivativeRequest(n, x, "K"))
        except LossOfSignificanceError as e:
            logger.warning(f"Oracle at n={n}, x={x:g} degraded: {e}")
            return e.best.value

    def evaluate(self, n: int, x: float) -> dict:
        """Derivative pair plus the oracle comparison"""
        row = self.derivative_pair(n, x)
        oracle = self.oracle(n, x)
        row["oracle"] = oracle
        row["rel_diff"] = abs(row["k_derivative"] - oracle) / abs(oracle) if oracle else math.inf
        logger.info(f"eval n={n}, x={x:g}: K derivative {row['k_derivative']:.12e} (rel_diff {row['rel_diff']:.2e})")
        return row

    def table(self, n_max: int, x_grid: Sequence[float]) -> list[dict]:
        """Rows ordered by x, then n"""
        self._check_order(n_max, self.n_max, "n_max")
        grid = list(x_grid)

        def rows_at(x: float) -> list[dict]:
            return [self.derivative_pair(n, x) for n in range(n_max + 1)]

        return [row for rows in self._map(rows_at, grid) for row in rows]

    # ========== Verification ==========

    def verify(self, suite: str) -> list[VerificationReport]:
        return run_suite(suite, self.tol, self.workers)

    # ========== Taylor coefficients of h ==========

    def _comparator(self, n: int) -> float:
        try:
            return h_closed_derivative(n)
        except LossOfSignificanceError as e:
            logger.warning(f"FD comparator for alpha_{n} degraded: {e}")
            return e.best.value

    def alpha(self, n_max: int, j_max: Optional[int] = None) -> list[dict]:
        """alpha_n for n = 0..n_max with tail estimates, FD comparators and per-j terms"""
        self._check_order(n_max, self.alpha_n_max, "n_max")
        j_max = self.j_max if j_max is None else j_max
        breakdown = alpha_terms(n_max, j_max, self.tol, self.workers)

        rows = []
        for n in range(n_max + 1):
            comparator = self._comparator(n)
            value = breakdown.totals[n]
            rows.append({
                "n": n,
                "alpha": value,
                "tail_estimate": breakdown.tail_estimates[n],
                "fd_comparator": comparator,
                "rel_diff": abs(value - comparator) / abs(comparator) if comparator else math.inf,
                "terms": [row[n] for row in breakdown.rows],
            })
        return rows
