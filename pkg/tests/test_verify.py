"""Tests for the verification report."""

import math

import pytest

from ptscatter import scattering, spectrum, verify
from ptscatter.config import load_config, merge_config
from ptscatter.potential import PotentialParams


@pytest.fixture(scope="module")
def report():
    return verify.fixture_checks(PotentialParams(1.2, 3.7), load_config())


@pytest.mark.slow
class TestReport:
    def test_no_failures(self, report):
        failed = [r.name for r in report if r.failed]
        assert not failed, f"failed checks: {failed}"

    def test_sign_ratio_reported(self, report):
        (ratio,) = [r for r in report if "bare gamma product" in r.name]
        assert ratio.status == verify.INFO
        assert ratio.measured == pytest.approx(-1.0, abs=1e-12)

    def test_every_group_present(self, report):
        names = " ".join(r.name for r in report)
        for fragment in ("susy", "numerov", "unitarity", "pole", "isospectral", "orthonormality", "normalization"):
            assert fragment in names

    def test_info_has_no_tolerance(self, report):
        assert all(math.isnan(r.tolerance) for r in report if r.status == verify.INFO)


class TestResultHelpers:
    def test_tight_tolerance_fails(self):
        config = merge_config(load_config(), {"verify": {"tolerances": {"factorization": 0.0}}})
        results = list(verify._scattering_checks(PotentialParams(0.5, 2.0), "t", config))
        (factorization,) = [r for r in results if r.name.endswith("factorization")]
        assert factorization.failed
        assert verify.any_failed(results)

    def test_any_failed_empty(self):
        assert not verify.any_failed([])


class TestOracleSettings:
    OVERRIDE = {"oracle": {"r_min": 5e-4, "step": 2e-3, "energy_sampling": 0.05}}

    def test_defaults(self):
        assert verify._oracle_settings(load_config()) == {"r_min": 1e-3, "step": 1e-3, "sampling": 0.1}

    def test_scattering_grid_follows_config(self, monkeypatch):
        config = merge_config(load_config(), {**self.OVERRIDE, "verify": {"k_values": [1.0]}})
        grids = []

        def fake_extract(kind, params, k, grid=None):
            grids.append(grid)
            return scattering.s_matrix_for(kind, params, k)

        monkeypatch.setattr(verify.oracle, "extract_s_numeric", fake_extract)
        first = next(verify._scattering_checks(PotentialParams(0.5, 2.0), "t", config))
        assert first.status == verify.PASS
        (grid,) = grids
        assert grid.r_min == 5e-4
        assert grid.step == pytest.approx(2e-3, rel=1e-9)

    def test_shooting_follows_config(self, monkeypatch):
        config = merge_config(load_config(), self.OVERRIDE)
        calls = []

        def fake_shoot(kind, params, e_max, grid=None, sampling=None):
            calls.append((grid, sampling))
            return [spectrum.energy(params, nu) for nu in range(spectrum.nu_max(params) + 1)]

        monkeypatch.setattr(verify.oracle, "shoot_spectrum", fake_shoot)
        first = next(verify._spectrum_checks(PotentialParams(0.5, 2.0), "t", config))
        assert first.status == verify.PASS
        grid, sampling = calls[0]
        assert sampling == 0.05
        assert grid.r_min == 5e-4
        assert grid.step == pytest.approx(2e-3, rel=1e-9)


class TestPotentialChecks:
    def test_single_power_reading_reported_for_both_partners(self):
        results = list(verify._potential_checks(PotentialParams(2.5, 4.0), "t", load_config()))
        deviations = {r.name: r for r in results if "single-power" in r.name}
        assert set(deviations) == {
            "t single-power csch reading deviation gpt",
            "t single-power csch reading deviation extended",
        }
        for result in deviations.values():
            assert result.status == verify.INFO
            assert result.measured > 1e-3
        assert not verify.any_failed(results)
