"""Arithmetic coefficients, the h(s) identity and the alpha_n coefficients."""

import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy import special

from engines.bessel_reference import richardson_derivative
from engines.order_derivatives import k_jet
from engines.zeta_link import (
    a_fn,
    alpha_coeff,
    alpha_terms,
    b_fn,
    c_coeff,
    coefficient_jet,
    factorize,
    h_closed,
    h_closed_derivative,
    h_partial,
    pairwise_sum,
    prime_power_jet,
    zeta_star,
)


def _sigma1(n):
    return sum(d for d in range(1, n + 1) if n % d == 0)


def _zeta_star_scipy(s):
    return math.pi ** (-s / 2) * float(special.gamma(s / 2)) * (1.0 + float(special.zetac(s)))


class TestFactorize:
    def test_examples(self):
        assert factorize(1).factors == ()
        assert factorize(360).factors == ((2, 3), (3, 2), (5, 1))
        assert factorize(97).factors == ((97, 1),)

    @given(st.integers(1, 10**5))
    def test_product_restores_value(self, j):
        f = factorize(j)
        assert f.value == j
        primes = [p for p, _ in f.factors]
        assert primes == sorted(set(primes))

    def test_divisors(self):
        assert factorize(12).divisors() == [1, 2, 3, 4, 6, 12]

    def test_domain(self):
        with pytest.raises(ValueError):
            factorize(0)
        with pytest.raises(ValueError):
            factorize(10**6 + 1)


class TestMultiplicativeFunctions:
    @pytest.mark.parametrize("j,expected", [(1, 1), (9, 13), (6, 8), (8, 8), (12, 16)])
    def test_a_values(self, j, expected):
        assert a_fn(j) == expected

    @pytest.mark.parametrize("j,expected", [(1, 1), (2, 0), (15, 24), (9, 13)])
    def test_b_values(self, j, expected):
        assert b_fn(j) == expected

    @given(st.integers(0, 500))
    def test_odd_arguments_are_sigma1(self, k):
        j = 2 * k + 1
        assert a_fn(j) == b_fn(j) == _sigma1(j)

    def test_b_vanishes_on_even(self):
        assert all(b_fn(2 * k) == 0 for k in range(1, 1001))


class TestCoefficients:
    def test_unit(self):
        assert c_coeff(0.7, 1) == 1.0

    @pytest.mark.parametrize("e", [1, 2, 5])
    @pytest.mark.parametrize("s", [0.5, 2.0])
    def test_powers_of_two(self, e, s):
        assert c_coeff(s, 2 ** e) == pytest.approx(2 ** (e * (1 - s / 2)), rel=1e-14)

    def test_odd_prime(self):
        assert c_coeff(2.0, 3) == pytest.approx(40 / 3, rel=1e-14)

    @settings(max_examples=200)
    @given(j1=st.integers(1, 500), j2=st.integers(1, 500), s=st.sampled_from([0.5, 2.0]))
    def test_multiplicative(self, j1, j2, s):
        assume(math.gcd(j1, j2) == 1)
        assert c_coeff(s, j1 * j2) == pytest.approx(c_coeff(s, j1) * c_coeff(s, j2), rel=1e-12)


class TestJets:
    def test_unit_jet(self):
        assert coefficient_jet(1, 3).values == (1.0, 0.0, 0.0, 0.0)

    @pytest.mark.parametrize("e", [1, 3])
    def test_two_power_jet(self, e):
        rate = -e * math.log(2) / 2
        expected = [2 ** (0.75 * e) * rate ** n for n in range(4)]
        np.testing.assert_allclose(prime_power_jet(2, e, 3).values, expected, rtol=1e-13)

    def test_odd_prime_jet(self):
        r = math.log(3) / 2
        expected = [4 * (3 ** 0.25 * r ** n + 3 ** -0.25 * (-r) ** n) for n in range(4)]
        np.testing.assert_allclose(prime_power_jet(3, 1, 3).values, expected, rtol=1e-13)

    @pytest.mark.parametrize("j", [6, 12, 45, 360])
    def test_value_entry_is_coefficient(self, j):
        assert coefficient_jet(j, 2).values[0] == pytest.approx(c_coeff(0.5, j), rel=1e-13)

    @pytest.mark.parametrize("j", [12, 45])
    def test_derivative_entries(self, j):
        for n in (1, 2):
            reference = richardson_derivative(lambda s: c_coeff(s, j), 0.5, n).value
            assert coefficient_jet(j, 2).values[n] == pytest.approx(reference, rel=1e-7)


class TestCompletedZeta:
    def test_two(self):
        assert zeta_star(2.0) == pytest.approx(math.pi / 6, rel=1e-14)

    @pytest.mark.parametrize("s", [0.5, 3.0, 4.5])
    def test_against_scipy(self, s):
        assert zeta_star(s) == pytest.approx(_zeta_star_scipy(s), rel=1e-12)

    def test_functional_equation(self):
        assert zeta_star(0.3) == pytest.approx(zeta_star(0.7), rel=1e-12)

    def test_pole(self):
        with pytest.raises(ValueError):
            zeta_star(1.0)


class TestHIdentity:
    def test_single_term(self):
        assert h_partial(2.0, 1) == pytest.approx(float(special.kv(2.0, 2 * math.pi)), rel=1e-12)

    def test_empty_sum(self):
        assert h_partial(2.0, 0) == 0.0

    @pytest.mark.parametrize("s", [1.5, 2.0, 2.5, 3.0, 4.0])
    def test_partial_sum_matches_closed_form(self, s):
        assert h_partial(s, 60) == pytest.approx(h_closed(s), rel=1e-9)

    @pytest.mark.parametrize("s", [2.0, 3.0])
    def test_tail_matches_bessel_terms(self, s):
        full, head = h_partial(s, 60), h_partial(s, 40)
        tail = math.fsum(c_coeff(s, j) * float(special.kv(s, 2 * math.pi * math.sqrt(j))) for j in range(41, 61))
        assert full - head == pytest.approx(tail, rel=1e-3)
        assert abs(full - head) <= 1e-11 * abs(full)

    @pytest.mark.parametrize("s", [2.0, 3.0])
    def test_truncation_at_sixty_is_negligible(self, s):
        beyond = math.fsum(c_coeff(s, j) * float(special.kv(s, 2 * math.pi * math.sqrt(j))) for j in range(61, 241))
        assert abs(beyond) <= 1e-12 * abs(h_partial(s, 60))

    def test_threads_do_not_change_the_sum(self):
        assert h_partial(2.5, 60, workers=4) == h_partial(2.5, 60, workers=1)

    def test_closed_form_excludes_one(self):
        with pytest.raises(ValueError):
            h_closed(1.0)


class TestPairwiseSum:
    def test_small_cases(self):
        assert pairwise_sum([]) == 0.0
        assert pairwise_sum([3.0]) == 3.0

    @given(st.lists(st.floats(-1e3, 1e3), min_size=1, max_size=200))
    def test_close_to_exact_sum(self, values):
        assert pairwise_sum(values) == pytest.approx(math.fsum(values), abs=1e-9)


class TestAlpha:
    @pytest.fixture(scope="class")
    def breakdown(self):
        return alpha_terms(2, 60)

    def test_zeroth_coefficient_is_h_at_half(self, breakdown):
        assert breakdown.totals[0] == pytest.approx(h_closed(0.5), rel=1e-8)
        assert breakdown.totals[0] == pytest.approx(h_partial(0.5, 60), rel=1e-11)

    @pytest.mark.parametrize("n", [1, 2])
    def test_against_finite_differences(self, breakdown, n):
        assert breakdown.totals[n] == pytest.approx(h_closed_derivative(n), rel=1e-5)

    def test_first_row_is_k_jet(self, breakdown):
        np.testing.assert_allclose(breakdown.rows[0], k_jet(2, 2 * math.pi).values, rtol=1e-15)

    def test_tail_estimates_are_tiny(self, breakdown):
        for total, tail in zip(breakdown.totals, breakdown.tail_estimates):
            assert 0.0 <= tail < 1e-15 * max(1.0, abs(total))

    def test_worker_count_does_not_change_totals(self):
        assert alpha_terms(1, 12, workers=3).totals == alpha_terms(1, 12, workers=1).totals

    def test_alpha_coeff(self):
        assert alpha_coeff(0, 1) == pytest.approx(float(special.kv(0.5, 2 * math.pi)), rel=1e-13)

    @pytest.mark.parametrize("n,j_max", [(5, 60), (-1, 60), (1, 0)])
    def test_domain(self, n, j_max):
        with pytest.raises(ValueError):
            alpha_terms(n, j_max)
