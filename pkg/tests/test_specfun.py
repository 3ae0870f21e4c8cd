"""Tests for ptscatter.specfun: log-gamma, 2F1 on z <= 0, Jacobi and X1 Jacobi."""

import math

import mpmath
import numpy as np
import pytest
from scipy import special

from ptscatter.exceptions import (
    DegenerateParameterError,
    GammaOverflowError,
    GammaPoleError,
    RadialDomainError,
)
from ptscatter.specfun import (
    JacobiParams,
    gamma_ratio,
    hyp2f1,
    is_gamma_pole,
    jacobi_poly,
    log_gamma,
    power_series_2f1,
    x1_jacobi,
    x1_jacobi_scaled,
)


def _binomial_terms(n, alpha, beta, x):
    """Terms of sum_s C(n+a, n-s) C(n+b, s) ((x-1)/2)^s ((x+1)/2)^(n-s)."""
    s = np.arange(n + 1)
    return (
        special.binom(n + alpha, n - s)
        * special.binom(n + beta, s)
        * ((x - 1.0) / 2.0) ** s
        * ((x + 1.0) / 2.0) ** (n - s)
    )


class TestLogGamma:
    """log_gamma against known values and mpmath."""

    def test_half(self):
        assert log_gamma(0.5) == pytest.approx(0.5723649429247001, abs=1e-15)

    def test_matches_mpmath_right_half_plane(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            z = complex(rng.uniform(0.1, 30.0), rng.uniform(-30.0, 30.0))
            expected = complex(mpmath.loggamma(mpmath.mpc(z.real, z.imag)))
            assert abs(log_gamma(z) - expected) < 1e-12 * max(1.0, abs(expected)), f"z={z}"

    def test_matches_mpmath_left_half_plane(self):
        rng = np.random.default_rng(12)
        for _ in range(50):
            z = complex(rng.uniform(-8.0, 0.0), rng.uniform(0.05, 5.0))
            expected = complex(mpmath.gamma(mpmath.mpc(z.real, z.imag)))
            got = complex(np.exp(log_gamma(z)))
            assert abs(got - expected) < 1e-11 * abs(expected), f"z={z}"

    @pytest.mark.parametrize("z", [0.0, -1.0, -3.0, -3.0 + 1e-13, complex(-7.0, 1e-13)])
    def test_poles_raise(self, z):
        assert is_gamma_pole(z)
        with pytest.raises(GammaPoleError):
            log_gamma(z)

    def test_near_pole_is_finite(self):
        assert not is_gamma_pole(-2.5)
        assert np.isfinite(log_gamma(-2.5).real)


class TestGammaRatio:
    """Products and quotients of gamma functions in log space."""

    def test_recurrence(self):
        """Gamma(z+1)/Gamma(z) = z on random complex points."""
        rng = np.random.default_rng(2024)
        for _ in range(100):
            z = complex(rng.uniform(-5.0, 5.0), rng.uniform(0.1, 5.0))
            ratio = gamma_ratio([z + 1.0], [z])
            assert abs(ratio - z) < 1e-12 * abs(z), f"z={z}: {ratio}"

    def test_reflection_modulus(self):
        """|Gamma(2ik) Gamma(-A-ik) / (Gamma(-2ik) Gamma(-A+ik))| = 1 for real k."""
        for a, k in [(2.5, 0.7), (1.2, 3.0), (0.5, 0.01)]:
            ik = 1j * k
            value = gamma_ratio([2.0 * ik, -a - ik], [-2.0 * ik, -a + ik])
            assert abs(abs(value) - 1.0) < 1e-13

    def test_denominator_pole_raises(self):
        with pytest.raises(GammaPoleError):
            gamma_ratio([1.5], [-2.0])

    def test_denominator_pole_with_residues_gives_zero(self):
        assert gamma_ratio([1.5], [-2.0], residues=True) == 0

    def test_numerator_pole_raises(self):
        with pytest.raises(GammaPoleError):
            gamma_ratio([-2.0], [1.5])

    def test_residue_limit(self):
        """Gamma(-2+e)/Gamma(-1+e) -> 1/(-2) as e -> 0."""
        assert gamma_ratio([-2.0], [-1.0], residues=True) == pytest.approx(-0.5, abs=1e-15)

    def test_residue_net_order(self):
        assert gamma_ratio([-2.0], [1.0], residues=True) == complex(math.inf, 0.0)
        assert gamma_ratio([1.0], [-2.0], residues=True) == 0

    def test_overflow(self):
        with pytest.raises(GammaOverflowError):
            gamma_ratio([200.0], [])


class TestHyp2f1:
    """Routes of hyp2f1 on the negative real axis."""

    def test_terminating(self):
        assert hyp2f1(-2.0, 1.5, 2.5, -1.0) == pytest.approx(92.0 / 35.0, abs=1e-14)

    def test_zero_parameter(self):
        assert hyp2f1(0.0, 3.0, 1.5, -40.0) == 1

    @pytest.mark.parametrize("z", [-0.3, -2.0, -10.0, -1e6])
    def test_binomial_reduction(self, z):
        """2F1(a, b; b; z) = (1 - z)^(-a) on every route."""
        got = hyp2f1(0.8, 1.3, 1.3, z)
        expected = (1.0 - z) ** -0.8
        assert abs(got - expected) < 1e-12 * expected, f"z={z}: {got}"

    def test_example_value(self):
        assert hyp2f1(0.8, 1.3, 1.3, -2.0) == pytest.approx(3.0 ** -0.8, rel=1e-13)

    @pytest.mark.parametrize("z", [-0.3, -0.9, -1.5, -3.0, -7.0, -300.0])
    @pytest.mark.parametrize(
        "a, b, c",
        [
            (complex(-2.5, 1.0), complex(-2.5, -1.0), 2.0),
            (complex(0.3, 0.2), complex(-0.7, -0.2), 1.1),
            (complex(-1.2, 4.0), complex(-1.2, -4.0), 3.7),
        ],
    )
    def test_matches_mpmath(self, a, b, c, z):
        expected = complex(mpmath.hyp2f1(a, b, c, z))
        got = hyp2f1(a, b, c, z)
        assert abs(got - expected) < 1e-10 * max(1.0, abs(expected)), f"({a}, {b}; {c}; {z})"

    def test_integer_difference_falls_back(self):
        """a - b integer makes the 1/z connection singular; result still agrees."""
        a, b, c, z = 0.25, 2.25, 1.5, -5.0
        expected = complex(mpmath.hyp2f1(a, b, c, z))
        assert abs(hyp2f1(a, b, c, z) - expected) < 1e-10 * abs(expected)

    def test_positive_argument_rejected(self):
        with pytest.raises(RadialDomainError):
            hyp2f1(0.5, 0.5, 1.5, 0.2)

    def test_lower_parameter_pole(self):
        with pytest.raises(GammaPoleError):
            hyp2f1(0.5, 0.5, -2.0, -0.5)

    def test_power_series_domain(self):
        with pytest.raises(RadialDomainError):
            power_series_2f1(0.5, 0.5, 1.5, -1.0)


class TestJacobi:
    """Jacobi polynomials by recurrence, including beta < -1."""

    def test_known_values(self):
        assert jacobi_poly(1, 1.0, 1.0, 0.5) == pytest.approx(1.0, abs=1e-15)
        assert jacobi_poly(3, 1.0, -6.0, 2.0) == pytest.approx(1.0, abs=1e-13)
        assert jacobi_poly(0, 3.0, -9.0, 7.0) == 1.0

    def test_matches_scipy_classical_range(self):
        rng = np.random.default_rng(5)
        for _ in range(60):
            n = int(rng.integers(0, 11))
            alpha, beta = rng.uniform(-0.9, 3.0, size=2)
            x = rng.uniform(-1.0, 1.0, size=7)
            got = jacobi_poly(n, alpha, beta, x)
            expected = special.eval_jacobi(n, alpha, beta, x)
            assert np.max(np.abs(got - expected)) < 1e-10 * (1.0 + np.max(np.abs(expected))), (
                f"n={n}, alpha={alpha}, beta={beta}"
            )

    def test_negative_beta_against_binomial_sum(self):
        rng = np.random.default_rng(6)
        for _ in range(60):
            n = int(rng.integers(1, 11))
            alpha = rng.uniform(0.5, 5.0)
            beta = rng.uniform(-12.0, -2.0)
            x = rng.uniform(1.0, 10.0)
            terms = _binomial_terms(n, alpha, beta, x)
            got = jacobi_poly(n, alpha, beta, x)
            assert abs(got - terms.sum()) < 1e-9 * np.abs(terms).sum(), (
                f"n={n}, alpha={alpha}, beta={beta}, x={x}"
            )

    def test_degenerate_recurrence_uses_explicit_sum(self):
        """n + alpha + beta = 0 zeroes a leading recurrence coefficient."""
        x = np.array([1.5, 2.0, 4.0])
        got = jacobi_poly(5, 1.0, -6.0, x)
        expected = np.array([_binomial_terms(5, 1.0, -6.0, v).sum() for v in x])
        assert np.allclose(got, expected, rtol=1e-11, atol=1e-11)

    def test_vectorized_shape(self):
        x = np.linspace(1.0, 3.0, 12).reshape(3, 4)
        assert jacobi_poly(4, 1.5, -7.0, x).shape == (3, 4)

    def test_negative_degree(self):
        with pytest.raises(DegenerateParameterError):
            jacobi_poly(-1, 1.0, 1.0, 0.0)


class TestX1Jacobi:
    """X1 exceptional Jacobi polynomials."""

    def test_known_value(self):
        value = x1_jacobi(2, JacobiParams(1.0, -6.0), 1.5)
        assert value == pytest.approx(-51.0 / 112.0, abs=1e-14)

    def test_degree_one(self):
        """P^_1 = -(x - b)/2 + b/(alpha + beta)."""
        jp = JacobiParams(1.0, -6.0)
        b = jp.jacobi_b
        x = np.array([1.0, 2.5, 6.0])
        assert np.allclose(x1_jacobi(1, jp, x), -(x - b) / 2.0 + b / (jp.alpha + jp.beta), rtol=1e-14)

    def test_shift_point(self):
        assert JacobiParams(1.0, -6.0).jacobi_b == pytest.approx(5.0 / 7.0)

    def test_equal_parameters_rejected(self):
        with pytest.raises(DegenerateParameterError):
            x1_jacobi(2, JacobiParams(1.5, 1.5), 2.0)

    def test_degree_zero_rejected(self):
        with pytest.raises(DegenerateParameterError):
            x1_jacobi(0, JacobiParams(1.0, -6.0), 2.0)

    def test_vanishing_normalizer_rejected(self):
        with pytest.raises(DegenerateParameterError):
            x1_jacobi(2, JacobiParams(1.0, -3.0), 2.0)


class TestX1JacobiScaled:
    """t^n P^_n(1/t), evaluated through sech r."""

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_matches_unscaled(self, n):
        jp = JacobiParams(1.5, -6.0)
        x = np.array([1.0, 1.7, 4.0, 30.0])
        got = x1_jacobi_scaled(n, jp, 1.0 / x) * x ** n
        expected = x1_jacobi(n, jp, x)
        assert np.allclose(got, expected, rtol=1e-12, atol=1e-12 * np.max(np.abs(expected)))

    def test_leading_coefficient_at_zero(self):
        jp = JacobiParams(1.0, -6.0)
        assert x1_jacobi_scaled(1, jp, 0.0) == pytest.approx(-0.5, abs=1e-15)
        # -(alpha + beta + 2) / 4
        assert x1_jacobi_scaled(2, jp, 0.0) == pytest.approx(0.75, abs=1e-14)

    def test_finite_where_unscaled_overflows(self):
        jp = JacobiParams(1.5, -6.0)
        with pytest.raises(GammaOverflowError):
            x1_jacobi(4, jp, 1e100)
        assert math.isfinite(x1_jacobi_scaled(4, jp, 1e-100))
