"""Tests for configuration loading and radial grids."""

import pytest

from ptscatter.config import DEFAULTS_PATH, load_config, merge_config, tolerance
from ptscatter.exceptions import ConfigError, RadialDomainError
from ptscatter.grid import RadialGrid


class TestConfig:
    def test_defaults(self):
        config = load_config()
        assert config["fixtures"] == [[2.5, 4.0], [0.5, 2.0], [1.2, 3.7]]
        assert tolerance(config, "oracle_phase", 0.0) == 1e-4
        assert DEFAULTS_PATH.exists()

    def test_merge_is_recursive(self):
        base = {"verify": {"tolerances": {"a": 1.0, "b": 2.0}, "k_values": [1.0]}}
        merged = merge_config(base, {"verify": {"tolerances": {"b": 3.0}}})
        assert merged["verify"]["tolerances"] == {"a": 1.0, "b": 3.0}
        assert merged["verify"]["k_values"] == [1.0]
        assert base["verify"]["tolerances"]["b"] == 2.0

    def test_user_file_overrides(self, tmp_path):
        path = tmp_path / "user.yaml"
        path.write_text("verify:\n  tolerances:\n    oracle_phase: 1.0e-3\n", encoding="utf-8")
        config = load_config(path)
        assert tolerance(config, "oracle_phase", 0.0) == 1e-3
        assert tolerance(config, "oracle_flux", 0.0) == 1e-6

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.yaml"
        path.write_text("", encoding="utf-8")
        assert load_config(path) == load_config()

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(tmp_path / "nope.yaml")

    def test_invalid_yaml(self, tmp_path):
        path = tmp_path / "broken.yaml"
        path.write_text("verify: [unclosed\n", encoding="utf-8")
        with pytest.raises(ConfigError, match="invalid YAML"):
            load_config(path)

    def test_tolerance_fallback(self):
        assert tolerance({}, "anything", 0.5) == 0.5


class TestRadialGrid:
    def test_with_step_covers_range(self):
        grid = RadialGrid.with_step(1e-3, 10.0, 1e-3)
        assert grid.r_max >= 10.0
        assert grid.step == pytest.approx(1e-3, rel=1e-12)
        assert grid.points[0] == 1e-3

    def test_index_at(self):
        grid = RadialGrid(1.0, 2.0, 11)
        assert grid.index_at(1.5) == 5
        assert grid.index_at(-3.0) == 0
        assert grid.index_at(9.0) == 10

    @pytest.mark.parametrize("args", [(0.0, 1.0, 10), (1.0, 1.0, 10), (0.1, 1.0, 2)])
    def test_invalid(self, args):
        with pytest.raises(RadialDomainError):
            RadialGrid(*args)

    def test_non_positive_step(self):
        with pytest.raises(RadialDomainError):
            RadialGrid.with_step(0.1, 1.0, 0.0)
