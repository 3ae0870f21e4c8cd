"""Tests for ptscatter.potential."""

import math

import numpy as np
import pytest

from ptscatter import potential
from ptscatter.exceptions import ParameterError, RadialDomainError
from ptscatter.grid import RadialGrid
from ptscatter.potential import PotentialKind, PotentialParams

KINDS = list(PotentialKind)


class TestPotentialParams:
    @pytest.mark.parametrize("a, b", [(2.5, 3.4), (0.0, 2.0), (-0.5, 2.0), (1.0, 2.0), (math.nan, 3.0)])
    def test_constraint_violations(self, a, b):
        with pytest.raises(ParameterError):
            PotentialParams(a, b)

    def test_message_names_constraint(self):
        with pytest.raises(ParameterError, match=r"B > A\+1 > 1"):
            PotentialParams(2.5, 3.4)

    def test_valid_and_jacobi(self):
        p = PotentialParams(2.5, 4.0)
        jp = p.jacobi()
        assert (jp.alpha, jp.beta) == (1.0, -7.0)
        assert p.threshold == 6.25

    def test_hashable(self):
        assert len({PotentialParams(0.5, 2.0), PotentialParams(0.5, 2.0)}) == 1


class TestSuperpotential:
    def test_gpt_closed_form(self):
        p = PotentialParams(2.5, 4.0)
        r = 1.3
        expected = 2.5 / math.tanh(r) - 4.0 / math.sinh(r)
        assert potential.w_gpt(p, r) == pytest.approx(expected, rel=1e-14)

    def test_extended_closed_form(self):
        p = PotentialParams(1.2, 3.7)
        r = 0.8
        d_plus = 2 * 3.7 * math.cosh(r) - 2 * 1.2 - 1
        d_minus = 2 * 3.7 * math.cosh(r) - 2 * 1.2 + 1
        expected = (
            1.2 / math.tanh(r) - 3.7 / math.sinh(r)
            + 2 * 3.7 * math.sinh(r) / d_plus - 2 * 3.7 * math.sinh(r) / d_minus
        )
        assert potential.w_ext(p, r) == pytest.approx(expected, rel=1e-13)

    @pytest.mark.parametrize("kind", KINDS)
    def test_derivative_matches_difference(self, params, kind):
        h = 1e-5
        for r in (0.3, 1.0, 2.5, 7.0):
            numeric = (
                potential.superpotential(kind, params, r + h) - potential.superpotential(kind, params, r - h)
            ) / (2 * h)
            analytic = potential.superpotential_derivative(kind, params, r)
            assert abs(numeric - analytic) < 1e-6 * max(1.0, abs(analytic)), f"r={r}"

    @pytest.mark.parametrize("r", [0.0, -1.0, [0.5, 0.0]])
    def test_non_positive_radius(self, r):
        with pytest.raises(RadialDomainError):
            potential.w_gpt(PotentialParams(2.5, 4.0), r)

    def test_large_radius_finite(self):
        p = PotentialParams(2.5, 4.0)
        w = potential.w_ext(p, np.array([100.0, 800.0]))
        assert np.all(np.isfinite(w))
        assert np.allclose(w, 2.5, atol=1e-12)


class TestPotential:
    @pytest.mark.parametrize("kind", KINDS)
    def test_centrifugal_limit(self, params, kind):
        """r^2 V(r) -> (B-A)(B-A-1) as r -> 0, extrapolated from two radii."""
        expected = (params.B - params.A) * (params.B - params.A - 1.0)
        r1, r2 = 2e-3, 1e-3
        f1 = r1 * r1 * potential.v_from_w(kind, params, r1)
        f2 = r2 * r2 * potential.v_from_w(kind, params, r2)
        # r^2 V is even in r
        limit = (4.0 * f2 - f1) / 3.0
        assert limit == pytest.approx(expected, rel=1e-4, abs=1e-6)

    @pytest.mark.parametrize("kind", KINDS)
    def test_flat_tail(self, params, kind):
        r = np.linspace(30.0, 60.0, 50)
        v = np.asarray(potential.v_from_w(kind, params, r))
        assert np.max(np.abs(v - params.threshold)) < 1e-10

    def test_denominator_positive(self, params):
        r = np.linspace(1e-4, 20.0, 5000)
        d = np.asarray(potential.denominator(params, r))
        assert np.min(d) >= 2 * params.B - 2 * params.A - 1 - 1e-9
        assert np.min(d) > 0

    @pytest.mark.parametrize("kind", KINDS)
    def test_susy_residual(self, params, kind):
        grid = RadialGrid.with_step(1.0, 10.0, 1e-4)
        assert potential.susy_residual(kind, params, grid) <= 1e-6

    def test_susy_grid_must_clear_origin(self):
        grid = RadialGrid(1e-4, 1.0, 11)
        with pytest.raises(RadialDomainError):
            potential.susy_residual(PotentialKind.GPT, PotentialParams(2.5, 4.0), grid)

    def test_closed_forms_match_superpotential(self, params):
        r = np.linspace(0.1, 20.0, 2000)
        gpt = np.asarray(potential.v_from_w(PotentialKind.GPT, params, r))
        ext = np.asarray(potential.v_from_w(PotentialKind.EXTENDED, params, r))
        assert np.max(np.abs(np.asarray(potential.closed_v_gpt(params, r)) - gpt)) < 1e-10
        assert np.max(np.abs(np.asarray(potential.closed_v_extended(params, r)) - ext)) < 1e-10

    def test_single_power_reading_differs(self):
        p = PotentialParams(2.5, 4.0)
        r = np.linspace(0.1, 5.0, 200)
        literal = np.asarray(potential.closed_v_gpt(p, r, squared_cosech=False))
        exact = np.asarray(potential.v_from_w(PotentialKind.GPT, p, r))
        assert np.max(np.abs(literal - exact)) > 1e-3

    def test_rational_correction_is_difference(self, params):
        r = np.linspace(0.1, 15.0, 300)
        diff = np.asarray(potential.v_from_w(PotentialKind.EXTENDED, params, r)) - np.asarray(
            potential.v_from_w(PotentialKind.GPT, params, r)
        )
        assert np.max(np.abs(np.asarray(potential.rational_correction(params, r)) - diff)) < 1e-9
