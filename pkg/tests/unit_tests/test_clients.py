"""
Unit tests for client classes.
"""

import hashlib
import json
import math
import os
from unittest.mock import patch

import numpy as np
import pytest

from clients.client import Client
from clients.comparison_client import COMPARISON_COLUMNS, ComparisonClient, poisson_l1, render_histogram
from clients.config_loader import CavitySpec, GridSpec, RunConfig
from clients.ensemble_client import EnsembleClient, cavity_status, histogram_table
from clients.model_client import AMPLITUDE_KA, AMPLITUDE_ORDERS, RESONANCE_COLUMNS, ModelClient
from clients.output_client import OutputClient, Table, format_value, read_manifest, render_table
from errors import OutputError, SampleTooSmallError
from spectral_stats import EnsembleSpec, build_histogram


@pytest.fixture
def small_config():
    """Default cavity with a band to 2 GHz and a short grid."""
    return RunConfig(
        ensemble=EnsembleSpec(n_cavities=2, c_min_m=0.2, c_max_m=0.3, f_max_GHz=2.0, master_seed=7),
        cavity=CavitySpec(band_max_GHz=2.0),
        grid=GridSpec(k_min_per_m=1.0, k_max_per_m=40.0, k_step_per_m=0.5, kappa_per_m=(20.0,)),
    )


class TestClient:
    """Test the base Client class."""

    def test_client_is_abstract(self):
        """Test that Client is an abstract base class."""
        with pytest.raises(TypeError):
            Client()


class TestTableRendering:
    """Test CSV and JSON table serialization."""

    def test_float_precision(self):
        """Reals carry 17 significant digits and read back exactly."""
        text = format_value(0.1)
        assert text == "0.10000000000000001"
        assert float(text) == 0.1
        assert format_value(np.float64(1.0) / 3.0) == "0.33333333333333331"

    def test_scalar_formats(self):
        assert format_value(None) == ""
        assert format_value(True) == "true"
        assert format_value(np.int64(12)) == "12"
        assert format_value("eq18") == "eq18"

    def test_header_only_csv(self):
        """An empty table still has its header row."""
        payload = render_table(Table(name="resonances", columns=list(RESONANCE_COLUMNS)), "csv")
        assert payload.decode("utf-8") == ",".join(RESONANCE_COLUMNS) + "\n"

    def test_line_endings(self):
        payload = render_table(Table(name="t", columns=["a", "b"], rows=[[1, 2.5], [3, None]]), "csv")
        assert b"\r" not in payload
        assert payload.decode("utf-8") == "a,b\n1,2.5\n3,\n"

    def test_json_records(self):
        """The JSON mirror is a list of records with null for missing or non-finite values."""
        table = Table(name="t", columns=["a", "b"], rows=[[1, math.inf], [2, 0.5]])
        records = json.loads(render_table(table, "json"))
        assert records == [{"a": 1, "b": None}, {"a": 2, "b": 0.5}]

    def test_unknown_format(self):
        with pytest.raises(OutputError):
            render_table(Table(name="t", columns=["a"]), "xml")


class TestOutputClient:
    """Test the OutputClient class."""

    def test_writes_tables_and_manifest(self, tmp_path):
        """Every file is listed in the manifest with its size and SHA-256."""
        client = OutputClient(tmp_path / "run", "modes", config={"bins": 20}, master_seed=5)
        client.add_table(Table(name="modes", columns=["rank"], rows=[[1], [2]]))
        client.add_binary("histogram.png", b"\x89PNG")
        client.update_summary(count=np.int64(2))
        manifest_path = client.run()

        manifest = read_manifest(manifest_path)
        assert manifest["command"] == "modes"
        assert manifest["master_seed"] == 5
        assert manifest["config"] == {"bins": 20}
        assert manifest["summary"] == {"count": 2}
        assert manifest["tool"] == "cavity-scatter"
        for entry in manifest["files"]:
            data = (tmp_path / "run" / entry["name"]).read_bytes()
            assert entry["bytes"] == len(data)
            assert entry["sha256"] == hashlib.sha256(data).hexdigest()
        assert sorted(e["name"] for e in manifest["files"]) == ["histogram.png", "modes.csv"]

    def test_json_format(self, tmp_path):
        client = OutputClient(tmp_path, "modes", fmt="json")
        client.add_table(Table(name="modes", columns=["rank"], rows=[[1]]))
        client.run()
        assert json.loads((tmp_path / "modes.json").read_text()) == [{"rank": 1}]
        assert not (tmp_path / "modes.csv").exists()

    def test_no_staging_left_behind(self, tmp_path):
        client = OutputClient(tmp_path, "modes")
        client.add_table(Table(name="modes", columns=["rank"]))
        client.run()
        assert sorted(p.name for p in tmp_path.iterdir()) == ["manifest.json", "modes.csv"]

    def test_failed_move_removes_partial_output(self, tmp_path):
        """If moving a file fails, files already moved are removed and no manifest appears."""
        client = OutputClient(tmp_path, "ensemble")
        client.add_table(Table(name="resonances", columns=["k"]))
        client.add_table(Table(name="spacings", columns=["s"]))

        calls = {"count": 0}
        real_replace = os.replace

        def flaky_replace(src, dst):
            calls["count"] += 1
            if calls["count"] == 2:
                raise OSError("disk full")
            return real_replace(src, dst)

        with patch("clients.output_client.os.replace", side_effect=flaky_replace):
            with pytest.raises(OutputError, match="disk full"):
                client.run()
        assert list(tmp_path.iterdir()) == []

    def test_reserved_name(self, tmp_path):
        client = OutputClient(tmp_path, "modes")
        client.add_binary("manifest.json", b"{}")
        with pytest.raises(OutputError):
            client.run()

    def test_invalid_format(self, tmp_path):
        with pytest.raises(OutputError):
            OutputClient(tmp_path, "modes", fmt="xlsx")

    def test_read_manifest_missing(self, tmp_path):
        with pytest.raises(OutputError):
            read_manifest(tmp_path / "manifest.json")


class TestModelClient:
    """Test the ModelClient class."""

    def test_modes_table(self, small_config):
        """Modes up to the top of the band, ranked by eigenvalue."""
        (table,) = ModelClient(small_config).modes()
        assert table.name == "modes"
        eigenvalues = table.column("eigenvalue_per_m2")
        assert eigenvalues == sorted(eigenvalues)
        assert table.column("rank")[:2] == [1, 2]
        assert all(f <= 2.0 for f in table.column("f_GHz"))
        assert table.rows[0][1:3] == [1, 1]

    def test_xi_table_with_oracle(self, small_config):
        (table,) = ModelClient(small_config).xi(oracle=True)
        kappa_rows = [r for r in table.records() if r["kind"] == "kappa"]
        k_rows = [r for r in table.records() if r["kind"] == "k"]
        assert len(k_rows) == 79
        assert len(kappa_rows) == 1
        assert kappa_rows[0]["oracle_xi"] is not None
        assert kappa_rows[0]["oracle_diff"] == pytest.approx(kappa_rows[0]["xi_re"] - kappa_rows[0]["oracle_xi"])
        assert all(r["xi_im"] == 0.0 for r in k_rows)

    def test_reflection_table(self, small_config):
        """|r| = 1 everywhere on the grid."""
        (table,) = ModelClient(small_config).reflect()
        assert np.allclose(table.column("abs_r"), 1.0, atol=1e-12)

    def test_amplitudes_table(self, small_config):
        (table,) = ModelClient(small_config).amplitudes()
        assert len(table.rows) == len(AMPLITUDE_KA) * len(AMPLITUDE_ORDERS)
        first = table.records()[0]
        assert first["ka"] == pytest.approx(1e-4)
        assert first["mismatch"] < 1e-3
        assert all(r["mismatch"] is None for r in table.records() if r["order"] != 0)

    def test_resonances_with_oracle(self, small_config):
        tables = ModelClient(small_config).resonances(oracle=True)
        assert [t.name for t in tables] == ["resonances", "phase_peaks", "perturbative"]
        resonances = tables[0]
        assert resonances.columns == RESONANCE_COLUMNS
        assert resonances.rows
        assert all(r["im_k_per_m"] < 0 for r in resonances.records())
        assert all(r["cavity_id"] == 0 for r in resonances.records())


class TestEnsembleClient:
    """Test the EnsembleClient class."""

    def test_run_tables_and_summary(self, small_config):
        client = EnsembleClient(small_config.ensemble, n_jobs=1)
        resonances, spacings, histogram = client.run()
        assert resonances.name == "resonances"
        assert spacings.columns == ["cavity_id", "s"]
        assert len(histogram.rows) == small_config.ensemble.bins
        summary = client.summary()
        assert summary["spacing_count"] == len(spacings.rows)
        assert summary["failed_cavities"] == []
        statuses = cavity_status(client.report)
        assert [s["cavity_id"] for s in statuses] == [0, 1]
        assert all(s["status"] == "ok" for s in statuses)

    def test_summary_before_run(self, small_config):
        assert EnsembleClient(small_config.ensemble).summary() == {}


class TestComparisonClient:
    """Test the ComparisonClient class."""

    def test_control_against_poisson(self):
        client = ComparisonClient(20, 4.0)
        client.load_control(400, 11, (0.2, 0.5))
        comparison, histogram = client.run()
        row = comparison.records()[0]
        assert comparison.columns == COMPARISON_COLUMNS
        assert row["against"] == "poisson"
        assert row["sample_count"] == 399
        assert row["ks_distance"] < 0.12
        assert row["histogram_l1"] == pytest.approx(poisson_l1(build_histogram(client.spacings, 20, 4.0)))
        assert histogram.name == "histogram"
        assert client.summary["sample_count"] == 399

    def test_against_own_histogram(self, tmp_path, rng):
        """A sample compared with its own stored histogram has zero L1 distance."""
        spacings = rng.exponential(size=300)
        hist = build_histogram(spacings, 20, 4.0)
        output = OutputClient(tmp_path, "compare")
        output.add_table(histogram_table(hist))
        output.run()

        client = ComparisonClient(20, 4.0, against=str(tmp_path / "histogram.csv"))
        client.use_spacings(spacings)
        tables = client.run()
        assert [t.name for t in tables] == ["comparison", "histogram", "reference_histogram"]
        assert tables[0].records()[0]["histogram_l1"] == pytest.approx(0.0, abs=1e-12)

    def test_against_reference_spacings(self, tmp_path, rng):
        path = tmp_path / "reference.csv"
        path.write_text("s\n" + "\n".join(str(s) for s in rng.exponential(size=200)) + "\n", encoding="utf-8")
        client = ComparisonClient(20, 4.0, against=str(path))
        client.use_spacings(rng.exponential(size=300))
        row = client.run()[0].records()[0]
        assert row["reference_count"] == 200
        assert row["ks_distance"] < 0.2

    def test_load_run(self, tmp_path):
        (tmp_path / "spacings.csv").write_text("cavity_id,s\n0,0.5\n0,1.5\n", encoding="utf-8")
        client = ComparisonClient(20, 4.0)
        assert list(client.load_run(tmp_path)) == [0.5, 1.5]
        with pytest.raises(OutputError):
            client.load_run(tmp_path / "elsewhere")

    def test_small_sample(self):
        client = ComparisonClient(20, 4.0)
        client.use_spacings(np.ones(10))
        with pytest.raises(SampleTooSmallError):
            client.run()

    def test_plot(self, rng):
        """The figure is a PNG image."""
        hist = build_histogram(rng.exponential(size=200), 20, 4.0)
        assert render_histogram(hist, hist).startswith(b"\x89PNG")
        client = ComparisonClient(20, 4.0, plot=True)
        client.use_spacings(rng.exponential(size=200))
        client.run()
        assert client.figure_png.startswith(b"\x89PNG")
