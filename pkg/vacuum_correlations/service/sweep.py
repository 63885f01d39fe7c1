"""
Grid sweeps over (H, alpha), (q, alpha) or T, and the data files they produce.

Each grid point is evaluated on its own (in a worker pool when asked for),
a failing point becomes a row with an ``error`` message, and rows are
always assembled in grid order so the files do not depend on the number
of processes.
"""

import json
import logging
import math
import multiprocessing
import os
import warnings
from typing import Any, Dict, List, Optional, Tuple, Union

import pandas as pd
from pydantic import BaseModel
from tqdm import tqdm

from vacuum_correlations import __version__
from vacuum_correlations.enums.config import FigureTag, GridAxis, OutputFormat
from vacuum_correlations.models.common import ModeSpec
from vacuum_correlations.models.config import MinimizerConfig, SweepConfig, TruncationConfig
from vacuum_correlations.models.exception import (
    ConfigError, IoError, TruncationWarning, VacuumCorrelationError,
)
from vacuum_correlations.models.report import CorrelationReport, FigureDataset
from vacuum_correlations.service.correlations import ORACLE_TOL, correlation_report
from vacuum_correlations.service.vacuum_core import effective_parameters, truncation_level

logger = logging.getLogger(__name__)

COLUMNS = [
    'alpha', 'k', 'hubble_H', 'q', 'f', 'T', 'n_max', 'tail_mass',
    'negativity_spectral', 'negativity_closed_printed', 'negativity_closed_variantB',
    'entropy_A', 'entropy_RI', 'entropy_joint',
    'mutual_info_I', 'mutual_info_II', 'mutual_info_closed',
    'discord', 'discord_theta', 'discord_phi',
]
ERROR_COLUMN = 'error'
FLOAT_FORMAT = '%.12g'
PRESET_DIR = os.path.join(os.path.dirname(__file__), 'presets')


class GridPoint(BaseModel):
    """One sweep input. ``mode`` is None on a T axis."""
    mode : Optional[ModeSpec] = None
    T    : Optional[float] = None
    theta: Optional[float] = None


class PointResult(BaseModel):
    row               : Dict[str, Any]
    truncation_clamped: bool = False
    deltas            : Dict[str, float] = {}


def grid_points(config: SweepConfig) -> List[GridPoint]:
    """Grid order: alpha, then the grid axis, then theta."""
    thetas = config.theta_values or [None]
    axis = config.grid.axis
    points = []

    if axis == GridAxis.T:
        if len(config.alpha_values) > 1:
            logger.debug("T axis: alpha_values %s are not used", config.alpha_values)
        for T in config.grid.values:
            points.extend(GridPoint(T=T, theta=theta) for theta in thetas)
        return points

    for alpha in config.alpha_values:
        for value in config.grid.values:
            if axis == GridAxis.HUBBLE:
                mode = ModeSpec(alpha=alpha, wavenumber_k=config.grid.wavenumber_k, hubble_H=value)
            else:
                mode = ModeSpec.from_q(alpha, value)
            points.extend(GridPoint(mode=mode, theta=theta) for theta in thetas)
    return points


def input_row(point: GridPoint) -> Dict[str, Any]:
    """Row with the input columns filled and every output empty."""
    row = {column: None for column in COLUMNS}
    row[ERROR_COLUMN] = ''
    if point.mode is not None:
        row.update(alpha=point.mode.alpha, k=point.mode.wavenumber_k,
                   hubble_H=point.mode.hubble_H, q=point.mode.thermal_q)
    else:
        row['T'] = point.T
    return row


def report_row(row: Dict[str, Any], report: CorrelationReport) -> Dict[str, Any]:
    """Fill the output columns; bound violations go to the error column."""
    row = dict(row)
    row.update({
        'T'                         : report.T,
        'n_max'                     : report.n_max_used,
        'tail_mass'                 : report.tail_mass,
        'negativity_spectral'       : report.negativity_spectral,
        'negativity_closed_printed' : report.negativity_closed_as_printed,
        'negativity_closed_variantB': report.negativity_closed_variantB,
        'entropy_A'                 : report.entropy_A,
        'entropy_RI'                : report.entropy_RI,
        'entropy_joint'             : report.entropy_joint,
        'mutual_info_I'             : report.mutual_info_I,
        'mutual_info_II'            : report.mutual_info_II,
        'mutual_info_closed'        : report.mutual_info_closed,
        'discord'                   : report.discord,
        'discord_theta'             : report.discord_argmin.theta,
        'discord_phi'               : report.discord_argmin.phi,
    })
    problems = report.violations()
    if problems:
        row[ERROR_COLUMN] = "; ".join(problems)
    return row


def _evaluate(point: GridPoint, truncation: TruncationConfig,
              minimizer: MinimizerConfig) -> PointResult:
    row = input_row(point)
    clamped = False
    try:
        q = None
        if point.mode is not None:
            params = effective_parameters(point.mode)
            row.update(q=params.q, f=params.f, T=params.T)
            T, q = params.T, params.q
        else:
            T = point.T

        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter('always', TruncationWarning)
            level = truncation_level(T, truncation.tail_tol, truncation.n_cap)
        for warning in caught:
            logger.warning(str(warning.message))
        clamped = level.clamped

        report = correlation_report(T, level.n_max, level.tail_mass, minimizer=minimizer,
                                    q=q, theta=point.theta, truncation_clamped=clamped)
    except VacuumCorrelationError as e:
        logger.warning("Point %s failed: %s", point.model_dump(exclude_none=True), e.message)
        row[ERROR_COLUMN] = f"{type(e).__name__}: {e.message}"
        return PointResult(row=row, truncation_clamped=clamped)

    row = report_row(row, report)
    return PointResult(row=row, truncation_clamped=clamped, deltas=report.closed_vs_oracle_deltas)


def evaluate_point(mode: Union[ModeSpec, float],
                   truncation: Optional[TruncationConfig] = None,
                   minimizer: Optional[MinimizerConfig] = None,
                   theta: Optional[float] = None) -> Dict[str, Any]:
    """One row of the emitted columns. ``mode`` may also be T itself."""
    if isinstance(mode, ModeSpec):
        point = GridPoint(mode=mode, theta=theta)
    else:
        point = GridPoint(T=mode, theta=theta)
    return _evaluate(point, truncation or TruncationConfig(), minimizer or MinimizerConfig()).row


def _evaluate_task(task: Tuple[GridPoint, TruncationConfig, MinimizerConfig]) -> PointResult:
    return _evaluate(*task)


def _evaluate_all(config: SweepConfig, threads: int, progress: bool) -> List[PointResult]:
    points = grid_points(config)
    tasks = [(point, config.truncation, config.minimizer) for point in points]
    desc = "Evaluating grid points"

    if threads > 1 and len(tasks) > 1:
        try:
            with multiprocessing.Pool(processes=threads) as pool:
                # imap keeps the grid order
                return list(tqdm(pool.imap(_evaluate_task, tasks), total=len(tasks),
                                 desc=desc, disable=not progress))
        except (OSError, RuntimeError) as e:
            logger.warning("Multiprocessing failed: %s. Falling back to single-process execution.", e)

    return [_evaluate_task(task) for task in tqdm(tasks, desc=desc, disable=not progress)]


def discrepancy_summary(results: List[PointResult]) -> Dict[str, Any]:
    """Largest closed-form vs spectral difference per quantity."""
    maxima: Dict[str, float] = {}
    for result in results:
        for name, delta in result.deltas.items():
            maxima[name] = max(maxima.get(name, 0.0), float(delta))
    return {
        'max_deltas'         : maxima,
        'variantB_matches'   : maxima.get('negativity_variantB', 0.0) <= ORACLE_TOL,
        'mutual_info_matches': maxima.get('mutual_info', 0.0) <= ORACLE_TOL,
        'tolerance'          : ORACLE_TOL,
    }


def run_sweep(config: SweepConfig, threads: Optional[int] = None, progress: bool = False,
              default_tag: FigureTag = FigureTag.DISCREPANCY_REPORT) -> List[FigureDataset]:
    """Evaluate the whole grid once and return one dataset per figure tag of the config."""
    threads = threads or config.processing.num_processes or 1
    results = _evaluate_all(config, threads, progress)

    rows = [result.row for result in results]
    clamped = [i for i, result in enumerate(results) if result.truncation_clamped]
    failed = [i for i, row in enumerate(rows) if row[ERROR_COLUMN]]
    if failed:
        logger.warning("%d of %d grid points carry an error", len(failed), len(rows))

    datasets = []
    for tag in config.figure_tags or [default_tag]:
        metadata = {
            'tool_version'       : __version__,
            'config_hash'        : config.config_hash(),
            'figure_tag'         : tag.value,
            'rows'               : len(rows),
            'truncation_warnings': clamped,
            'error_rows'         : failed,
        }
        if tag == FigureTag.DISCREPANCY_REPORT:
            metadata['discrepancy'] = discrepancy_summary(results)
        datasets.append(FigureDataset(figure_tag=tag, rows=[dict(row) for row in rows],
                                      metadata=metadata))
    return datasets


def _json_value(value: Any) -> Any:
    if isinstance(value, float):
        if math.isnan(value):
            return None
        if math.isinf(value):
            return '-inf' if value < 0 else 'inf'
        return float(FLOAT_FORMAT % value)
    return value


def _frame(dataset: FigureDataset) -> pd.DataFrame:
    columns = COLUMNS + [ERROR_COLUMN]
    df = pd.DataFrame(dataset.rows, columns=columns)
    # integral column with gaps must not turn into floats
    df['n_max'] = df['n_max'].astype('Int64')
    return df


def _write_csv(dataset: FigureDataset, path: str):
    _frame(dataset).to_csv(path, index=False, float_format=FLOAT_FORMAT,
                           lineterminator='\n', encoding='utf-8')


def _write_json(dataset: FigureDataset, path: str):
    columns = COLUMNS + [ERROR_COLUMN]
    records = [{column: _json_value(row.get(column)) for column in columns} for row in dataset.rows]
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        json.dump(records, f, indent=2, allow_nan=False)
        f.write('\n')


def emit(dataset: FigureDataset, format: OutputFormat, path: str):
    """Write the dataset and its ``<path>.meta.json`` sidecar."""
    format = OutputFormat(format)
    try:
        parent = os.path.dirname(os.path.abspath(path))
        os.makedirs(parent, exist_ok=True)
        if format == OutputFormat.CSV:
            _write_csv(dataset, path)
        else:
            _write_json(dataset, path)
        with open(f"{path}.meta.json", 'w', encoding='utf-8', newline='\n') as f:
            json.dump(dataset.metadata, f, indent=2, sort_keys=True, allow_nan=False)
            f.write('\n')
    except OSError as e:
        raise IoError(f"Cannot write {path}: {e}")
    logger.info("Wrote %d rows of %s to %s", len(dataset.rows), dataset.figure_tag.value, path)


def default_output_path(tag: FigureTag, format: OutputFormat) -> str:
    return f"{tag.value.lower()}.{OutputFormat(format).value}"


def load_preset(tag: Union[FigureTag, str]) -> SweepConfig:
    """Built-in sweep config reproducing one figure."""
    if not isinstance(tag, FigureTag):
        try:
            tag = FigureTag.from_short(tag)
        except ValueError as e:
            raise ConfigError(str(e))
    return SweepConfig.from_cfg_file(os.path.join(PRESET_DIR, f"{tag.value.lower()}.cfg"))
