import logging
import sys
from pathlib import Path
from typing import Any, NoReturn, Optional

import click
import numpy as np
from dotenv import dotenv_values
from pydantic import ValidationError

from cascade_rabi.config import DEFAULT_G, DEFAULT_KAPPA, settings
from cascade_rabi.dynamics import (
    EULER_ANGLE_ERRATA,
    quantized_euler_angles,
    resonance_eigenvalues,
    rotating_frame_hamiltonian,
    sector_eigenvalues,
    sector_hamiltonian,
    semiclassical_euler_angles,
)
from cascade_rabi.errors import InvalidInput, NumericalFailure
from cascade_rabi.figures import reproduce_figures as write_figures
from cascade_rabi.linalg import hermitian_eigensystem
from cascade_rabi.schema import (
    CaseId,
    EulerAngles,
    Model,
    OutputFormat,
    RunConfig,
    SectorParams,
    SemiclassicalParams,
    WeightingMode,
)
from cascade_rabi.session import SimulationSession
from cascade_rabi.utils import format_number

logger = logging.getLogger(__name__)

EXIT_INVALID = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


def _configure_logging(verbose: bool) -> None:
    if verbose or settings.VERBOSE:
        level = logging.DEBUG
    else:
        level = getattr(logging, settings.LOG_LEVEL.upper(), logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def _fail(ctx: click.Context, code: int, message: str) -> NoReturn:
    click.echo(f"error: {message}", err=True)
    ctx.exit(code)


def _read_config_file(path: Optional[Path]) -> dict[str, Any]:
    if path is None:
        return {}
    values = dotenv_values(path)
    return {
        key.strip().lower().replace("-", "_"): value
        for key, value in values.items()
        if value is not None
    }


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Log at DEBUG level on stderr.")
def main(verbose: bool) -> None:
    """Exact Rabi oscillations of an equidistant cascade four-level atom."""
    _configure_logging(verbose)


@main.command()
@click.argument("model", type=click.Choice([m.value for m in Model]))
@click.option("--case", type=click.Choice([c.value for c in CaseId]))
@click.option("--kappa", type=float, help="Classical coupling (semiclassical).")
@click.option("--g", type=float, help="Atom-field coupling (quantized, coherent).")
@click.option("--delta", type=float, help="Detuning omega0 - Omega.")
@click.option("--n", type=int, help="Photon index of the sector (quantized).")
@click.option("--nbar", type=float, help="Mean photon number (coherent).")
@click.option("--epsilon", type=float, help="Poisson tail tolerance (coherent).")
@click.option("--tmax", "t_max", type=float, help="End of the time grid.")
@click.option("--steps", type=int, help="Number of grid points.")
@click.option("--format", "format_", type=click.Choice([f.value for f in OutputFormat]))
@click.option("--output", "-o", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--weighting-mode", type=click.Choice([w.value for w in WeightingMode]))
@click.option(
    "--renormalize", is_flag=True, default=None, help="Divide by the summed weight."
)
@click.option(
    "--config",
    "config_file",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="key=value file; flags override it.",
)
@click.pass_context
def simulate(
    ctx: click.Context, model: str, config_file: Optional[Path], **flags: Any
) -> None:
    """Simulate MODEL and write the probability trace."""
    values = _read_config_file(config_file)
    if "format_" in flags:
        flags["format"] = flags.pop("format_")
    values.update({key: value for key, value in flags.items() if value is not None})
    values["model"] = model

    try:
        config = RunConfig(**values)
    except ValidationError as e:
        _fail(ctx, EXIT_INVALID, f"invalid configuration: {e}")

    try:
        result = SimulationSession(config).run()
    except InvalidInput as e:
        _fail(ctx, EXIT_INVALID, str(e))
    except NumericalFailure as e:
        _fail(ctx, EXIT_NUMERICAL, f"numerical failure: {e}")

    if config.output is None:
        click.echo(result.artifact.text, nl=False)
    else:
        try:
            result.artifact.save(config.output)
        except OSError as e:
            _fail(ctx, EXIT_IO, f"cannot write {config.output}: {e}")
    click.echo(result.summary, err=True)


@main.command("reproduce-figures")
@click.argument("outdir", type=click.Path(file_okay=False, path_type=Path))
@click.option("--plot-script", is_flag=True, help="Also write a matplotlib script.")
@click.pass_context
def reproduce_figures(ctx: click.Context, outdir: Path, plot_script: bool) -> None:
    """Write the 24 figure panels and manifest.json into OUTDIR."""
    try:
        paths = write_figures(outdir, plot_script=plot_script)
    except OSError as e:
        _fail(ctx, EXIT_IO, f"cannot write figures to {outdir}: {e}")
    except NumericalFailure as e:
        _fail(ctx, EXIT_NUMERICAL, f"numerical failure: {e}")
    click.echo(f"wrote {len(paths)} files to {outdir}", err=True)


def _echo_values(prefix: str, values: np.ndarray) -> None:
    for k, value in enumerate(values, start=1):
        click.echo(f"{prefix}{k} = {format_number(value)}")


@main.command()
@click.option("--n", type=int, help="Dressed spectrum of sector n.")
@click.option("--g", type=float, default=DEFAULT_G, show_default=True)
@click.option("--kappa", type=float, default=DEFAULT_KAPPA, show_default=True)
@click.option("--delta", type=float, default=0.0, show_default=True)
@click.pass_context
def eigen(
    ctx: click.Context, n: Optional[int], g: float, kappa: float, delta: float
) -> None:
    """Print the semiclassical or dressed eigenvalues."""
    try:
        if n is None:
            params = SemiclassicalParams.from_detuning(kappa=kappa, delta=delta)
            if delta == 0.0:
                values = resonance_eigenvalues(kappa)
            else:
                h = rotating_frame_hamiltonian(params)
                values = hermitian_eigensystem(h).eigenvalues
        elif delta == 0.0:
            spectrum = sector_eigenvalues(n, g)
            click.echo(f"b = {format_number(spectrum.b)}")
            values = spectrum.eigenvalues
        else:
            h = sector_hamiltonian(SectorParams(n=n, g=g, delta=delta))
            values = hermitian_eigensystem(h).eigenvalues
    except InvalidInput as e:
        _fail(ctx, EXIT_INVALID, str(e))
    _echo_values("lambda", values)


@main.command()
@click.option("--n", type=int, help="Quantized angles of sector n (n >= 1).")
@click.pass_context
def angles(ctx: click.Context, n: Optional[int]) -> None:
    """Print the six Euler angles of the diagonalizing rotation."""
    try:
        result: EulerAngles = (
            semiclassical_euler_angles() if n is None else quantized_euler_angles(n)
        )
    except InvalidInput as e:
        _fail(ctx, EXIT_INVALID, str(e))
    except NumericalFailure as e:
        _fail(ctx, EXIT_NUMERICAL, f"numerical failure: {e}")
    _echo_values("theta", result.as_array())
    if n is not None:
        for name, note in EULER_ANGLE_ERRATA.items():
            click.echo(f"# erratum {name}: {note}", err=True)


if __name__ == "__main__":
    main()
