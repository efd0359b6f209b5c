"""End-to-end tests for the command-line interface."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import pytest
from typer.testing import CliRunner

from tangent_bundle_nn.cli import EXIT_CONFIG, EXIT_NUMERIC, app
from tangent_bundle_nn.data.csv_source import write_cloud_csv
from tangent_bundle_nn.geometry import sample_sphere

runner = CliRunner()

TINY_TOML = """\
experiment_id = "cli"
n_list = [{sizes}]
sample_seeds = [0]
noise_seeds = [0]
convergence_seeds = [0]
tau_list = [0.05]
epochs = 3
eval_points = 20
output_dir = "{output_dir}"
"""


def _write_config(tmp_path: Path, sizes: str = "150") -> Path:
    path = tmp_path / "tiny.toml"
    path.write_text(
        TINY_TOML.format(sizes=sizes, output_dir=(tmp_path / "default").as_posix()),
        encoding="utf-8",
    )
    return path


def _count_rows(path: Path) -> int:
    with open(path, encoding="utf-8", newline="") as f:
        return sum(1 for _ in csv.DictReader(f))


class TestSheafCommands:
    """build-sheaf and spectrum."""

    def test_build_sheaf_writes_directory(self, tmp_path: Path) -> None:
        out = tmp_path / "sheaf"
        result = runner.invoke(app, ["build-sheaf", "--input", "sphere:150", "--out", str(out)])

        assert result.exit_code == 0, result.output
        assert "n=150" in result.stdout
        assert {"bases.csv", "edges.csv", "meta.json"} <= {p.name for p in out.iterdir()}

    def test_spectrum_exports_requested_pairs(self, tmp_path: Path) -> None:
        sheaf_dir = tmp_path / "sheaf"
        spec_dir = tmp_path / "spectrum"
        built = runner.invoke(
            app, ["build-sheaf", "--input", "sphere:150", "--seed", "3", "--out", str(sheaf_dir)]
        )
        assert built.exit_code == 0, built.output

        result = runner.invoke(
            app, ["spectrum", "--sheaf", str(sheaf_dir), "--k", "5", "--out", str(spec_dir)]
        )

        assert result.exit_code == 0, result.output
        assert _count_rows(spec_dir / "eigenvalues.csv") == 5
        sidecar = json.loads((spec_dir / "eigenvectors.json").read_text(encoding="utf-8"))
        assert sidecar["cols"] == 5
        assert sidecar["order"] == "F"

    def test_csv_input(self, tmp_path: Path) -> None:
        """A CSV path is accepted wherever ``sphere:<n>`` is."""
        cloud_csv = write_cloud_csv(sample_sphere(150, 1), tmp_path / "cloud.csv")
        result = runner.invoke(
            app, ["build-sheaf", "--input", str(cloud_csv), "--out", str(tmp_path / "sheaf")]
        )

        assert result.exit_code == 0, result.output

    def test_tiny_epsilon_is_numerical_failure(self, tmp_path: Path) -> None:
        result = runner.invoke(
            app,
            ["build-sheaf", "--input", "sphere:150", "--epsilon", "1e-8",
             "--out", str(tmp_path / "sheaf")],
        )

        assert result.exit_code == EXIT_NUMERIC
        assert "Numerical failure" in result.output

    def test_missing_csv_is_input_error(self, tmp_path: Path) -> None:
        result = runner.invoke(
            app,
            ["build-sheaf", "--input", str(tmp_path / "absent.csv"),
             "--out", str(tmp_path / "sheaf")],
        )

        assert result.exit_code == EXIT_CONFIG


class TestExperimentCommands:
    """Config-driven commands on a tiny grid."""

    def test_denoise(self, tmp_path: Path) -> None:
        out = tmp_path / "denoise"
        result = runner.invoke(
            app, ["denoise", "--config", str(_write_config(tmp_path)), "--out", str(out)]
        )

        assert result.exit_code == 0, result.output
        assert "eval_mse=" in result.stdout
        assert _count_rows(out / "loss.csv") == 3

    def test_table1(self, tmp_path: Path) -> None:
        out = tmp_path / "table1"
        result = runner.invoke(
            app, ["table1", "--config", str(_write_config(tmp_path)), "--out", str(out)]
        )

        assert result.exit_code == 0, result.output
        assert _count_rows(out / "results.csv") == 2
        assert _count_rows(out / "summary.csv") == 2
        assert "ddtnn" in result.stdout
        assert "mnn" in result.stdout

    def test_table1_defaults_to_config_output_dir(self, tmp_path: Path) -> None:
        result = runner.invoke(app, ["table1", "--config", str(_write_config(tmp_path))])

        assert result.exit_code == 0, result.output
        assert (tmp_path / "default" / "meta.json").exists()

    def test_converge(self, tmp_path: Path) -> None:
        out = tmp_path / "converge"
        result = runner.invoke(
            app,
            ["converge", "--config", str(_write_config(tmp_path, "120, 150")), "--out", str(out)],
        )

        assert result.exit_code == 0, result.output
        assert (out / "convergence.csv").exists()
        assert _count_rows(out / "convergence_median.csv") == 2

    def test_spectral_converge(self, tmp_path: Path) -> None:
        out = tmp_path / "spectral"
        result = runner.invoke(
            app,
            ["spectral-converge", "--config", str(_write_config(tmp_path)), "--out", str(out)],
        )

        assert result.exit_code == 0, result.output
        assert _count_rows(out / "spectral.csv") == 1

    @pytest.mark.parametrize("command", ["denoise", "table1", "converge", "spectral-converge"])
    def test_invalid_config_exits_with_config_code(self, tmp_path: Path, command: str) -> None:
        result = runner.invoke(
            app, [command, "--config", str(_write_config(tmp_path, "10"))]
        )

        assert result.exit_code == EXIT_CONFIG
        assert "Configuration error" in result.output

    def test_missing_config(self, tmp_path: Path) -> None:
        result = runner.invoke(app, ["table1", "--config", str(tmp_path / "absent.toml")])

        assert result.exit_code == EXIT_CONFIG

    def test_log_level_option(self, tmp_path: Path) -> None:
        result = runner.invoke(
            app,
            ["--log-level", "debug", "spectral-converge",
             "--config", str(_write_config(tmp_path)), "--out", str(tmp_path / "s")],
        )

        assert result.exit_code == 0, result.output
