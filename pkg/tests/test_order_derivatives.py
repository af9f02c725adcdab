"""Order derivatives of T and K at s = 1/2 against closed forms and finite differences."""

import math

import numpy as np
import pytest
from scipy import special

from engines.bessel_reference import OrderDerivativeRequest, fd_order_derivative, richardson_derivative
from engines.numeric_defaults import NUMERIC_DEFAULTS, configure
from engines.order_derivatives import (
    k_deriv1,
    k_deriv2_reduced,
    k_half,
    k_jet,
    k_jet_with_errors,
    k_second_order_terms,
    t_deriv1,
    t_deriv2_explicit,
    t_deriv_n,
    t_half,
    t_jet,
    jump_term_bracket,
    jump_term_coefficient_maps,
)
from engines.quadrature import QuadratureError

X_GRID = [0.25, 0.5, 1.0, 2.0, 5.0, 10.0]
FD_X_GRID = [0.5, 1.0, 2.0, 5.0]


class TestHalfOrder:
    def test_values_at_one(self):
        assert t_half(1.0) == pytest.approx(0.5778636749, rel=1e-9)
        assert k_half(1.0) == pytest.approx(0.4610685044, rel=1e-9)

    @pytest.mark.parametrize("x", X_GRID)
    def test_k_half_is_kv(self, x):
        assert k_half(x) == pytest.approx(float(special.kv(0.5, x)), rel=1e-13)

    def test_domain(self):
        with pytest.raises(ValueError):
            t_half(0.0)


class TestFirstDerivative:
    @pytest.mark.parametrize("x", X_GRID)
    def test_closed_assembly(self, x):
        scaled = math.exp(2 * x) * float(special.exp1(2 * x))
        expected = (scaled + math.log(x) + np.euler_gamma - math.log(2)) * 0.5 * math.pi * math.exp(-x)
        assert t_deriv1(x) == pytest.approx(expected, rel=1e-11)

    @pytest.mark.parametrize("x", X_GRID)
    def test_t_against_finite_differences(self, x):
        assert t_deriv1(x) == pytest.approx(fd_order_derivative(OrderDerivativeRequest(1, x, "T")), rel=1e-7)

    @pytest.mark.parametrize("x", X_GRID)
    def test_k_against_finite_differences(self, x):
        assert k_deriv1(x) == pytest.approx(fd_order_derivative(OrderDerivativeRequest(1, x, "K")), rel=1e-7)

    def test_k_value_at_one(self):
        expected = float(special.kv(0.5, 1.0)) * math.exp(2.0) * float(special.exp1(2.0))
        assert k_deriv1(1.0) == pytest.approx(expected, rel=1e-11)
        assert k_deriv1(1.0) == pytest.approx(0.1665972450, rel=1e-9)


class TestCoefficientMaps:
    def test_second_order(self):
        maps = jump_term_coefficient_maps(2)
        assert dict(maps.a2) == {(1, 0): -2.0, (0, 1): -2.0}
        assert dict(maps.a3) == {(1, 1): 2.0, (0, 2): 1.0}
        assert dict(maps.a4) == {(0, 1): -2.0}

    def test_first_order(self):
        maps = jump_term_coefficient_maps(1)
        assert dict(maps.a2) == {(0, 0): -1.0}
        assert dict(maps.a3) == {(0, 1): 1.0}
        assert dict(maps.a4) == {}

    def test_maps_are_read_only(self):
        with pytest.raises(TypeError):
            jump_term_coefficient_maps(2).a2[(0, 0)] = 1.0

    @pytest.mark.parametrize("n", range(1, 7))
    def test_total_degree(self, n):
        maps = jump_term_coefficient_maps(n)
        assert max(a + b for a, b in maps.a2) == n - 1
        assert max(a + b for a, b in maps.a3) == n


class TestGeneralOrder:
    @pytest.mark.parametrize("x", X_GRID)
    def test_first_order_reproduces_closed_form(self, x):
        assert t_deriv_n(1, x) == pytest.approx(t_deriv1(x), rel=1e-11)

    @pytest.mark.parametrize("x", X_GRID)
    def test_second_order_matches_explicit(self, x):
        assert t_deriv_n(2, x) == pytest.approx(t_deriv2_explicit(x), rel=1e-9)

    @pytest.mark.parametrize("n", [2, 3, 4])
    @pytest.mark.parametrize("x", FD_X_GRID)
    def test_against_finite_differences(self, n, x):
        reference = fd_order_derivative(OrderDerivativeRequest(n, x, "T"))
        assert t_deriv_n(n, x) == pytest.approx(reference, rel=1e-5)

    def test_bracket_error_estimate_is_small(self):
        terms = jump_term_bracket(3, 1.0, 1e-12)
        assert terms.abs_error_estimate < 1e-10
        assert terms.bracket == pytest.approx(terms.a1 + terms.a2 + terms.a3 + terms.a4)

    def test_large_x_log_derivative(self):
        # T'/T -> Log x + gamma - Log 2 as x grows, with e^{2x}E1(2x) ~ 1/(2x)
        x = 40.0
        ratio = t_deriv_n(1, x) / t_half(x)
        assert ratio == pytest.approx(math.log(x) + np.euler_gamma - math.log(2) + 1 / (2 * x), abs=1e-3)

    @pytest.mark.parametrize("n,x", [(0, 1.0), (7, 1.0), (2, 0.0)])
    def test_domain(self, n, x):
        with pytest.raises(ValueError):
            t_deriv_n(n, x)


class TestJets:
    @pytest.mark.parametrize("x", [0.5, 2.0])
    def test_t_jet_entries(self, x):
        jet = t_jet(3, x)
        assert jet[0] == t_half(x)
        assert jet[1] == pytest.approx(t_deriv1(x), rel=1e-11)
        assert jet[3] == t_deriv_n(3, x)

    @pytest.mark.parametrize("x", X_GRID)
    def test_k_jet_low_orders(self, x):
        jet = k_jet(2, x)
        assert jet[0] == pytest.approx(k_half(x), rel=1e-14)
        assert jet[1] == pytest.approx(k_deriv1(x), rel=1e-11)

    @pytest.mark.parametrize("x", X_GRID)
    def test_k_jet_matches_reduced_second_derivative(self, x):
        assert k_jet(2, x)[2] == pytest.approx(k_deriv2_reduced(x), rel=1e-9)

    @pytest.mark.parametrize("n", [2, 3])
    @pytest.mark.parametrize("x", [1.0, 2 * math.pi])
    def test_k_jet_against_scipy_differences(self, n, x):
        reference = richardson_derivative(lambda s: float(special.kv(s, x)), 0.5, n).value
        assert k_jet(n, x)[n] == pytest.approx(reference, rel=1e-5)

    def test_error_jet_shape(self):
        values, errors = k_jet_with_errors(3, 1.0)
        assert len(values) == len(errors) == 4
        assert errors[0] == 0.0
        assert all(e >= 0.0 for e in errors.values)


class TestSecondOrderSplit:
    @pytest.mark.parametrize("x", [0.5, 1.0, 5.0])
    def test_gamma_terms_cancel(self, x):
        terms = k_second_order_terms(x)
        assert abs(terms["gamma_cancellation"]) < 1e-12
        assert terms["total"] * k_half(x) == pytest.approx(k_deriv2_reduced(x), rel=1e-9)


class TestBracketCache:
    def test_repeat_calls_share_the_result(self):
        assert jump_term_bracket(2, 1.3) is jump_term_bracket(2, 1.3)

    def test_tighter_refinement_cap_is_not_masked(self, monkeypatch):
        jump_term_bracket(2, 1.3)
        monkeypatch.setitem(NUMERIC_DEFAULTS["quadrature"], "max_halvings", 1)
        with pytest.raises(QuadratureError):
            jump_term_bracket(2, 1.3)

    def test_configure_reaches_cached_points(self):
        before = t_deriv_n(2, 2.0)
        configure({"quadrature": {"max_halvings": 1}})
        with pytest.raises(QuadratureError):
            t_deriv_n(2, 2.0)
        configure({"quadrature": {"max_halvings": 12}})
        assert t_deriv_n(2, 2.0) == before
