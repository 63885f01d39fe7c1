import logging
import sys

import click
from tabulate import tabulate

from vacuum_correlations import __version__
from vacuum_correlations.enums.config import FigureTag, GridAxis, OutputFormat
from vacuum_correlations.models.common import ModeSpec
from vacuum_correlations.models.config import (
    GridConfig, SweepConfig, TruncationConfig,
)
from vacuum_correlations.models.exception import (
    ConfigError, InvalidMode, InvalidParameter, IoError, VacuumCorrelationError,
)
from vacuum_correlations.models.report import FigureDataset
from vacuum_correlations.service.correlations import correlation_report
from vacuum_correlations.service.sweep import (
    GridPoint, default_output_path, emit, input_row, load_preset, report_row, run_sweep,
)
from vacuum_correlations.service.utils import format_float, parse_float
from vacuum_correlations.service.vacuum_core import effective_parameters, truncation_level

logger = logging.getLogger(__name__)

EXIT_CONFIG = 1
EXIT_IO = 2
EXIT_NUMERICAL = 3

LOG_LEVELS = ['debug', 'info', 'warning', 'error']

log_level_option = click.option(
    '--log-level', type=click.Choice(LOG_LEVELS, case_sensitive=False), default=None,
    help="Logging level (defaults to the config's [PROCESSING] logging, else warning).")
format_option = click.option(
    '--format', 'output_format', type=click.Choice([f.value for f in OutputFormat], case_sensitive=False),
    default=None, help="Output format.")
out_option = click.option('--out', 'out_path', type=click.Path(dir_okay=False), default=None,
                          help="Output file.")
threads_option = click.option('--threads', type=click.IntRange(min=1), default=None,
                              help="Worker processes for the grid points.")
quiet_option = click.option('--quiet', is_flag=True, help="No progress bar.")


def setup_logging(level: str):
    logging.basicConfig(
        level=getattr(logging, (level or 'warning').upper(), logging.WARNING),
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
        stream=sys.stderr,
    )


def fail(message: str, code: int):
    click.echo(f"Error: {message}", err=True)
    sys.exit(code)


def _progress(quiet: bool) -> bool:
    return not quiet and sys.stderr.isatty()


def _write(datasets, outputs, output_format, out_path):
    """Write each dataset to the path its output asks for, or to ``--out``."""
    if out_path and len(datasets) > 1:
        raise ConfigError("--out names one file but the config has several outputs")

    for dataset in datasets:
        output = next((o for o in outputs if o.figure_tag == dataset.figure_tag), None)
        fmt = OutputFormat(output_format) if output_format else (output.format if output else OutputFormat.CSV)
        if out_path:
            path = out_path
        elif output and output.path and (not output_format or OutputFormat(output_format) == output.format):
            path = output.path
        else:
            path = default_output_path(dataset.figure_tag, fmt)
        emit(dataset, fmt, path)
        click.echo(f"Wrote {len(dataset.rows)} rows to {path}")


def _run(config: SweepConfig, threads, output_format, out_path, quiet):
    try:
        datasets = run_sweep(config, threads=threads, progress=_progress(quiet))
        _write(datasets, config.outputs, output_format, out_path)
    except ConfigError as e:
        fail(e.message, EXIT_CONFIG)
    except IoError as e:
        fail(e.message, EXIT_IO)
    except VacuumCorrelationError as e:
        fail(e.message, EXIT_NUMERICAL)


@click.group()
def cli():
    """Negativity, mutual information and discord in de Sitter alpha-vacua."""
    pass


@cli.command()
@click.argument('config_file', type=click.Path())
@threads_option
@format_option
@out_option
@log_level_option
@quiet_option
def sweep(config_file, threads, output_format, out_path, log_level, quiet):
    """Run the sweep described by CONFIG_FILE."""
    try:
        config = SweepConfig.from_cfg_file(config_file)
    except ConfigError as e:
        setup_logging(log_level)
        fail(e.message, EXIT_CONFIG)

    setup_logging(log_level or config.processing.logging)
    if not config.outputs and not out_path:
        fail("Config has no [OUTPUT] section; pass --out", EXIT_CONFIG)
    _run(config, threads, output_format, out_path, quiet)


@cli.command()
@click.argument('tag')
@threads_option
@format_option
@out_option
@log_level_option
@quiet_option
def figure(tag, threads, output_format, out_path, log_level, quiet):
    """Reproduce the data of one figure from its built-in preset.

    TAG is a figure tag such as FIG6_DISCORD_CURVES or just FIG6.
    """
    setup_logging(log_level)
    try:
        config = load_preset(tag)
    except ConfigError as e:
        fail(e.message, EXIT_CONFIG)
    _run(config, threads, output_format, out_path, quiet)


@cli.command()
@click.option('--alpha', default='-inf', show_default=True,
              help="Vacuum parameter alpha < 0, or -inf for the Euclidean vacuum.")
@click.option('--q', 'q', type=float, default=None, help="Thermal parameter q = tanh r in [0, 1).")
@click.option('--hubble', type=float, default=None, help="Hubble scale H (with --k).")
@click.option('--k', 'wavenumber_k', type=float, default=1.0, show_default=True, help="Wavenumber k.")
@click.option('--t-direct', 't_direct', type=float, default=None, help="Effective parameter T in [0, 1).")
@click.option('--theta', type=float, default=None,
              help="Evaluate the discord at this theta (phi = 0) instead of minimizing.")
@click.option('--tail-tol', type=float, default=TruncationConfig().tail_tol, show_default=True)
@click.option('--n-cap', type=int, default=TruncationConfig().n_cap, show_default=True)
@format_option
@out_option
@log_level_option
def point(alpha, q, hubble, wavenumber_k, t_direct, theta, tail_tol, n_cap,
          output_format, out_path, log_level):
    """Evaluate every measure at a single point and print the report."""
    setup_logging(log_level)
    given = [name for name, value in (('--q', q), ('--hubble', hubble), ('--t-direct', t_direct))
             if value is not None]
    if len(given) != 1:
        fail("Give exactly one of --q, --hubble or --t-direct", EXIT_CONFIG)

    try:
        alpha = parse_float(alpha)
        truncation = TruncationConfig(tail_tol=tail_tol, n_cap=n_cap)
        grid_point, params = None, None
        if t_direct is not None:
            T, q_printed = t_direct, None
            grid_point = GridPoint(T=T, theta=theta)
            grid = GridConfig(axis=GridAxis.T, values=[T])
        else:
            if q is not None:
                mode = ModeSpec.from_q(alpha, q)
                grid = GridConfig(axis=GridAxis.Q, values=[q])
            else:
                mode = ModeSpec(alpha=alpha, wavenumber_k=wavenumber_k, hubble_H=hubble)
                grid = GridConfig(axis=GridAxis.HUBBLE, values=[hubble], wavenumber_k=wavenumber_k)
            params = effective_parameters(mode)
            T, q_printed = params.T, params.q
            grid_point = GridPoint(mode=mode, theta=theta)
        config = SweepConfig(alpha_values=[alpha], grid=grid,
                             theta_values=[theta] if theta is not None else None,
                             truncation=truncation)
    except (InvalidMode, InvalidParameter, ConfigError) as e:
        fail(e.message, EXIT_CONFIG)
    except ValueError as e:
        fail(str(e), EXIT_CONFIG)

    try:
        level = truncation_level(T, truncation.tail_tol, truncation.n_cap)
        report = correlation_report(T, level.n_max, level.tail_mass, minimizer=config.minimizer,
                                    q=q_printed, theta=theta, truncation_clamped=level.clamped)
    except (InvalidMode, InvalidParameter) as e:
        fail(e.message, EXIT_CONFIG)
    except VacuumCorrelationError as e:
        fail(e.message, EXIT_NUMERICAL)

    rows = [['alpha', format_float(alpha) if t_direct is None else '']]
    if params is not None:
        rows += [['q', params.q], ['f', params.f]]
    rows += [[name, value] for name, value in report.model_dump(
        exclude={'discord_argmin', 'closed_vs_oracle_deltas'}).items()]
    rows += [['discord_theta', report.discord_argmin.theta], ['discord_phi', report.discord_argmin.phi]]
    rows += [[f"delta {name}", value] for name, value in report.closed_vs_oracle_deltas.items()]
    click.echo(tabulate(rows, headers=['quantity', 'value'], tablefmt='grid', floatfmt='.12g'))

    problems = report.violations()
    if problems:
        fail('; '.join(problems), EXIT_NUMERICAL)

    if out_path:
        row = input_row(grid_point)
        if params is not None:
            row.update(q=params.q, f=params.f)
        dataset = FigureDataset(
            figure_tag=FigureTag.DISCREPANCY_REPORT,
            rows=[report_row(row, report)],
            metadata={
                'tool_version'       : __version__,
                'config_hash'        : config.config_hash(),
                'figure_tag'         : FigureTag.DISCREPANCY_REPORT.value,
                'rows'               : 1,
                'truncation_warnings': [0] if level.clamped else [],
                'error_rows'         : [],
            },
        )
        try:
            emit(dataset, OutputFormat(output_format or 'csv'), out_path)
        except IoError as e:
            fail(e.message, EXIT_IO)


if __name__ == "__main__":
    cli()
