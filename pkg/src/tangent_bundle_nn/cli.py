"""Command-line interface.

Exit codes: 0 on success, 2 for configuration or input errors, 3 for
numerical failures.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path

import typer

from tangent_bundle_nn.core.errors import ConfigurationError, TangentBundleError
from tangent_bundle_nn.data.factory import CloudSourceFactory
from tangent_bundle_nn.experiments.config import ExperimentConfig, load_config
from tangent_bundle_nn.experiments.convergence import run_convergence, write_convergence
from tangent_bundle_nn.experiments.denoise import run_denoise
from tangent_bundle_nn.experiments.spectral_convergence import (
    run_spectral_convergence,
    write_spectral_convergence,
)
from tangent_bundle_nn.experiments.table1 import run_table1, write_table1
from tangent_bundle_nn.sheaf.assembly import build_sheaf
from tangent_bundle_nn.sheaf.io import load_sheaf, save_sheaf
from tangent_bundle_nn.spectral.io import export_spectrum
from tangent_bundle_nn.spectral.spectrum import eigendecompose
from tangent_bundle_nn.validation.validators import create_sheaf_validators

EXIT_CONFIG = 2
EXIT_NUMERIC = 3

app = typer.Typer(help="Tangent bundle filters and networks on point clouds.")


def _init_trogon(app: typer.Typer) -> None:
    """Optionally enable the Trogon TUI when supported."""
    try:
        from trogon.typer import init_tui
    except Exception:
        return
    init_tui(app, name="tui")


_init_trogon(app)


@app.callback()
def configure(
    log_level: str = typer.Option(  # noqa: B008
        "WARNING",
        "--log-level",
        help="Root logger level (DEBUG, INFO, WARNING, ERROR).",
    ),
) -> None:
    """Configure logging once for every subcommand."""
    logging.basicConfig(
        level=log_level.upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


@contextmanager
def _exit_codes() -> Iterator[None]:
    try:
        yield
    except ConfigurationError as exc:
        typer.echo(f"Configuration error: {exc}", err=True)
        raise typer.Exit(code=EXIT_CONFIG) from exc
    except TangentBundleError as exc:
        typer.echo(f"Numerical failure [{exc.type}]: {exc.message()}", err=True)
        raise typer.Exit(code=EXIT_NUMERIC) from exc
    except (OSError, ValueError) as exc:
        typer.echo(f"Invalid input: {exc}", err=True)
        raise typer.Exit(code=EXIT_CONFIG) from exc


def _config_and_out(config_path: Path, out: Path | None) -> tuple[ExperimentConfig, Path]:
    config = load_config(config_path)
    return config, out if out is not None else config.output_dir


@app.command("build-sheaf")
def build_sheaf_command(
    input_spec: str = typer.Option(  # noqa: B008
        ..., "--input", help="'sphere:<n>' or a CSV file with x1..xp columns."
    ),
    seed: int = typer.Option(0, "--seed", help="Sampling seed."),  # noqa: B008
    out: Path = typer.Option(..., "--out", help="Output sheaf directory."),  # noqa: B008
    epsilon: float | None = typer.Option(  # noqa: B008
        None, "--epsilon", help="Kernel scale (default: n^(-2/(d+4)))."
    ),
    gamma: float = typer.Option(0.9, "--gamma", help="Local PCA variance threshold."),  # noqa: B008
) -> None:
    """Discretize the tangent bundle of a point cloud and save the sheaf."""
    with _exit_codes():
        cloud = CloudSourceFactory.from_spec(input_spec, seed=seed).load()
        sheaf = build_sheaf(cloud, epsilon=epsilon, gamma=gamma)
        validation = create_sheaf_validators(include_spectrum=False).validate(sheaf)
        for error in validation.errors:
            typer.echo(f"warning: {error.field}: {error.message}", err=True)
        save_sheaf(sheaf, out)
        typer.echo(f"Saved sheaf n={sheaf.n} d_hat={sheaf.d_hat} eps={sheaf.epsilon:.6g} to {out}")


@app.command()
def spectrum(
    sheaf_dir: Path = typer.Option(..., "--sheaf", help="Sheaf directory."),  # noqa: B008
    k: int | None = typer.Option(  # noqa: B008
        None, "--k", help="Number of eigenpairs (default all)."
    ),
    out: Path = typer.Option(..., "--out", help="Output directory."),  # noqa: B008
) -> None:
    """Eigendecompose a saved sheaf's Laplacian and export the spectrum."""
    with _exit_codes():
        result = eigendecompose(load_sheaf(sheaf_dir), count=k)
        export_spectrum(result, out)
        typer.echo(f"Exported {result.count} eigenpairs to {out}")


@app.command()
def denoise(
    config_path: Path = typer.Option(..., "--config", help="Experiment TOML."),  # noqa: B008
    out: Path | None = typer.Option(None, "--out", help="Output directory."),  # noqa: B008
) -> None:
    """Single denoising run on the first grid point of the config."""
    with _exit_codes():
        config, directory = _config_and_out(config_path, out)
        run = run_denoise(config, directory)
        typer.echo(f"eval_mse={run.outcome.eval_mse:.6g} written to {run.directory}")


@app.command()
def table1(
    config_path: Path = typer.Option(..., "--config", help="Experiment TOML."),  # noqa: B008
    out: Path | None = typer.Option(None, "--out", help="Output directory."),  # noqa: B008
) -> None:
    """DD-TNN vs MNN denoising over the full (n, tau, seed) grid."""
    with _exit_codes():
        config, directory = _config_and_out(config_path, out)
        result = run_table1(config)
        write_table1(result, config, directory)
        for row in result.summary:
            mean = "failed" if row.mean is None else f"{row.mean:.3e} +/- {row.std:.1e}"
            typer.echo(f"n={row.n:<5d} tau={row.tau:<6g} {row.model.value:<6s} {mean}")


@app.command()
def converge(
    config_path: Path = typer.Option(..., "--config", help="Experiment TOML."),  # noqa: B008
    out: Path | None = typer.Option(None, "--out", help="Output directory."),  # noqa: B008
) -> None:
    """Discrepancy of the network output against the largest-n run."""
    with _exit_codes():
        config, directory = _config_and_out(config_path, out)
        result = run_convergence(config)
        write_convergence(result, config, directory)
        for n, median, count in result.medians:
            shown = "failed" if median is None else f"{median:.3e}"
            typer.echo(f"n={n:<5d} median={shown} seeds={count}")


@app.command("spectral-converge")
def spectral_converge(
    config_path: Path = typer.Option(..., "--config", help="Experiment TOML."),  # noqa: B008
    out: Path | None = typer.Option(None, "--out", help="Output directory."),  # noqa: B008
) -> None:
    """Leading eigenvalues and cluster diagnostics per n."""
    with _exit_codes():
        config, directory = _config_and_out(config_path, out)
        report = run_spectral_convergence(config)
        write_spectral_convergence(report, config, directory)
        typer.echo(f"{len(report.rows)} spectra written to {directory}")


def main() -> None:
    app()


if __name__ == "__main__":
    main()
