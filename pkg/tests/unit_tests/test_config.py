"""
Unit tests for the run configuration loader.
"""

import json

import pytest

import control
from clients.config_loader import CavitySpec, GridSpec, RunConfig, parse_config, read_config
from errors import ConfigError


class TestDefaults:
    """Missing keys take the control.py defaults."""

    def test_no_path(self):
        config = read_config(None)
        assert config == RunConfig()
        assert config.ensemble.n_cavities == control.n_cavities
        assert config.ensemble.missing_fraction == control.missing_fraction

    def test_empty_document(self, run_config_file):
        config = read_config(run_config_file({}))
        assert config.ensemble.master_seed == control.master_seed
        assert config.cavity == CavitySpec()
        assert config.grid == GridSpec()

    def test_overrides(self, run_config_file):
        """Values from every section reach the dataclasses."""
        path = run_config_file(
            {
                "n_cavities": 3,
                "resonance_condition": "eq18",
                "spacing_variable": "frequency",
                "newton": {"tol": 1e-10, "max_iter": 80, "dedup_radius_per_m": 1e-5},
                "cavity": {"c1_m": 0.4, "x0_m": [0.2, 0.05], "band_max_GHz": 3.0},
                "grid": {"kappa_per_m": [10, 30]},
            }
        )
        config = read_config(path)
        assert config.ensemble.n_cavities == 3
        assert config.ensemble.resonance_condition == "eq18"
        assert config.ensemble.spacing_variable == "frequency"
        assert config.ensemble.newton.tol == 1e-10
        assert config.ensemble.newton.dedup_radius == 1e-5
        assert config.cavity.rect.c1 == 0.4
        assert config.cavity.x0_m == (0.2, 0.05)
        assert config.grid.kappa_per_m == (10.0, 30.0)

    def test_to_dict_round_trips(self):
        """The echoed configuration parses back to the same values."""
        config = RunConfig()
        echoed = json.loads(json.dumps(config.to_dict()))
        assert parse_config(echoed) == config

    def test_grid_values(self):
        grid = GridSpec(k_min_per_m=1.0, k_max_per_m=3.0, k_step_per_m=0.5)
        assert list(grid.k_values()) == [1.0, 1.5, 2.0, 2.5, 3.0]


class TestValidation:
    """Schema violations name the offending key."""

    @pytest.mark.parametrize(
        "document, key_path",
        [
            ({"antenna_radius_m": -1}, "antenna_radius_m"),
            ({"n_cavities": 2.5}, "n_cavities"),
            ({"n_cavities": True}, "n_cavities"),
            ({"missing_fraction": 1.0}, "missing_fraction"),
            ({"master_seed": -3}, "master_seed"),
            ({"cutoff_factor": 10}, "cutoff_factor"),
            ({"resonance_condition": "rr2"}, "resonance_condition"),
            ({"c_min_m": 0.5, "c_max_m": 0.3}, "c_max_m"),
            ({"newton": {"tol": 0}}, "newton.tol"),
            ({"cavity": {"x0_m": [0.1, "a"]}}, "cavity.x0_m[1]"),
            ({"cavity": {"x0_m": [0.5, 0.1]}}, "cavity.x0_m"),
            ({"cavity": {"band_min_GHz": 5, "band_max_GHz": 2}}, "cavity.band_max_GHz"),
            ({"grid": {"kappa_per_m": []}}, "grid.kappa_per_m"),
            ({"grid": {"k_min_per_m": 10, "k_max_per_m": 5}}, "grid.k_max_per_m"),
        ],
    )
    def test_bad_value(self, document, key_path):
        with pytest.raises(ConfigError) as exc_info:
            parse_config(document)
        assert exc_info.value.key_path == key_path
        assert str(exc_info.value).startswith(key_path)

    def test_unknown_key(self):
        """Unknown keys are refused and the known ones listed."""
        with pytest.raises(ConfigError) as exc_info:
            parse_config({"cavity": {"c3_m": 0.1}})
        assert exc_info.value.key_path == "cavity.c3_m"
        assert "c1_m" in str(exc_info.value)

    def test_not_an_object(self):
        with pytest.raises(ConfigError):
            parse_config([1, 2])
        with pytest.raises(ConfigError):
            parse_config({"newton": 5})

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            read_config(tmp_path / "absent.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(ConfigError) as exc_info:
            read_config(path)
        assert "not valid JSON" in str(exc_info.value)
