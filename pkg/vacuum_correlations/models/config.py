from pydantic import BaseModel, ValidationError, field_validator, model_validator
from typing import Optional, List
from enum import Enum
import os
import math
import json
import hashlib
import configparser
from configparser import ConfigParser

from vacuum_correlations.enums.config import GridAxis, OutputFormat, FigureTag
from vacuum_correlations.models.common import NEGATIVE_INFINITY
from vacuum_correlations.models.exception import ConfigError
from vacuum_correlations.service.utils import (
    parse_float, parse_float_list, format_float, inclusive_linspace,
)


def convert_to_str(val):
    if isinstance(val, Enum):
        return str(val.value)
    if isinstance(val, float):
        return format_float(val)
    if isinstance(val, list):
        return ','.join(convert_to_str(v) for v in val)
    if val is not None:
        return str(val)
    return ''


def _strictly_increasing(values: List[float], name: str) -> List[float]:
    if not values:
        raise ValueError(f"{name} must not be empty")
    for lo, hi in zip(values, values[1:]):
        if not hi > lo:
            raise ValueError(f"{name} must be strictly increasing, got {lo} then {hi}")
    return values


class TruncationConfig(BaseModel):
    tail_tol: float = 1e-12
    n_cap   : int   = 4096

    @field_validator('tail_tol')
    @classmethod
    def check_tol(cls, v):
        if not v > 0:
            raise ValueError("tail_tol must be positive")
        return v

    @field_validator('n_cap')
    @classmethod
    def check_cap(cls, v):
        if v < 8:
            raise ValueError("n_cap must be at least 8")
        return v


class MinimizerConfig(BaseModel):
    theta_points : int   = 64
    phi_points   : int   = 32
    entropy_tol  : float = 1e-10
    # grid cells on each side of the best grid point bracketed by the refinement
    refine_window: int   = 1

    @field_validator('theta_points')
    @classmethod
    def check_theta_points(cls, v):
        if v < 3:
            raise ValueError("theta_points must be at least 3")
        return v

    @field_validator('phi_points', 'refine_window')
    @classmethod
    def check_positive(cls, v):
        if v < 1:
            raise ValueError("must be at least 1")
        return v

    @field_validator('entropy_tol')
    @classmethod
    def check_entropy_tol(cls, v):
        if not v > 0:
            raise ValueError("entropy_tol must be positive")
        return v


class GridConfig(BaseModel):
    axis        : GridAxis    = GridAxis.HUBBLE
    values      : List[float]
    # only used on the hubble axis
    wavenumber_k: float       = 1.0

    @model_validator(mode='after')
    def check_values(self):
        _strictly_increasing(self.values, 'grid values')
        if self.axis == GridAxis.HUBBLE:
            if self.values[0] <= 0:
                raise ValueError("hubble values must be positive")
            if not self.wavenumber_k > 0:
                raise ValueError("wavenumber_k must be positive")
        elif self.values[0] < 0 or self.values[-1] >= 1:
            raise ValueError(f"{self.axis.value} values must lie in [0, 1)")
        return self


class OutputConfig(BaseModel):
    figure_tag: FigureTag
    format    : OutputFormat  = OutputFormat.CSV
    path      : Optional[str] = None


class ProcessingConfig(BaseModel):
    num_processes: Optional    [  int         ] = 1
    logging      : Optional    [  str         ] = 'warning'


class SweepConfig(BaseModel):
    alpha_values: List[float]                 = [NEGATIVE_INFINITY]
    grid        : GridConfig
    # set: discord evaluated at fixed theta (phi = 0) instead of minimized
    theta_values: Optional[List[float]]       = None
    truncation  : TruncationConfig            = TruncationConfig()
    minimizer   : MinimizerConfig             = MinimizerConfig()
    outputs     : List[OutputConfig]          = []
    processing  : ProcessingConfig            = ProcessingConfig()

    @field_validator('alpha_values')
    @classmethod
    def check_alpha(cls, v):
        for alpha in v:
            if math.isnan(alpha) or alpha >= 0:
                raise ValueError(f"every alpha must be < 0 or -inf, got {alpha}")
        return _strictly_increasing(v, 'alpha_values')

    @field_validator('theta_values')
    @classmethod
    def check_theta(cls, v):
        if v is None:
            return v
        for theta in v:
            if not 0.0 <= theta <= math.pi:
                raise ValueError(f"theta values must lie in [0, pi], got {theta}")
        return _strictly_increasing(v, 'theta_values')

    @property
    def figure_tags(self) -> List[FigureTag]:
        tags = []
        for output in self.outputs:
            if output.figure_tag not in tags:
                tags.append(output.figure_tag)
        return tags

    def config_hash(self) -> str:
        """Hash of everything that changes the numbers (not the thread count)."""
        payload = self.model_dump(exclude={'processing'})
        for output in payload['outputs']:
            output.pop('path', None)
        canonical = json.dumps(payload, sort_keys=True, default=str)
        return hashlib.sha256(canonical.encode('utf-8')).hexdigest()

    @classmethod
    def from_cfg_file(cls, cfg_path: str) -> "SweepConfig":
        cfg_path = os.path.abspath(cfg_path)
        if not os.path.isfile(cfg_path):
            raise ConfigError(f"Config file not found: {cfg_path}")

        config = configparser.ConfigParser()
        try:
            config.read(cfg_path)
        except configparser.Error as e:
            raise ConfigError(f"Could not parse {cfg_path}: {e}")
        return cls.from_cfg(config)

    @classmethod
    def from_cfg(cls, config: ConfigParser) -> "SweepConfig":
        try:
            return cls._from_cfg(config)
        except (ValidationError, ValueError, KeyError, configparser.Error) as e:
            raise ConfigError(f"Invalid sweep config: {e}")

    @classmethod
    def _from_cfg(cls, config: ConfigParser) -> "SweepConfig":
        if not config.has_section('SWEEP'):
            raise ConfigError("Config needs a [SWEEP] section")

        # Parse the SWEEP section
        alpha_values = parse_float_list(config.get('SWEEP', 'alpha_values', fallback='-inf'))
        axis         = GridAxis(config.get('SWEEP', 'axis', fallback='hubble').strip().lower())
        values       = parse_float_list(config.get('SWEEP', 'values', fallback=''))
        if not values and config.get('SWEEP', 'num', fallback=''):
            values = inclusive_linspace(
                parse_float(config.get('SWEEP', 'start')),
                parse_float(config.get('SWEEP', 'stop')),
                config.getint('SWEEP', 'num'),
            )
        theta_values = parse_float_list(config.get('SWEEP', 'theta_values', fallback='')) or None
        if theta_values is None and config.get('SWEEP', 'theta_num', fallback=''):
            # evenly spaced over [0, pi], both ends included
            theta_values = inclusive_linspace(0.0, math.pi, config.getint('SWEEP', 'theta_num'))

        grid = GridConfig(
            axis         = axis,
            values       = values,
            wavenumber_k = config.getfloat('SWEEP', 'wavenumber_k', fallback=1.0),
        )

        # Parse the TRUNCATION section
        truncation = TruncationConfig(
            tail_tol = config.getfloat('TRUNCATION', 'tail_tol', fallback=1e-12),
            n_cap    = config.getint('TRUNCATION', 'n_cap', fallback=4096),
        )

        # Parse the MINIMIZER section
        minimizer = MinimizerConfig(
            theta_points  = config.getint('MINIMIZER', 'theta_points', fallback=64),
            phi_points    = config.getint('MINIMIZER', 'phi_points', fallback=32),
            entropy_tol   = config.getfloat('MINIMIZER', 'entropy_tol', fallback=1e-10),
            refine_window = config.getint('MINIMIZER', 'refine_window', fallback=1),
        )

        # Every section named OUTPUT* is one output
        outputs = []
        for section in config.sections():
            if not section.upper().startswith('OUTPUT'):
                continue
            outputs.append(
                OutputConfig(
                    figure_tag = FigureTag.from_short(config.get(section, 'figure_tag')),
                    format     = OutputFormat(config.get(section, 'format', fallback='csv').strip().lower()),
                    path       = config.get(section, 'path', fallback=None) or None,
                )
            )

        processing = ProcessingConfig(
            num_processes = config.getint('PROCESSING', 'num_processes', fallback=1),
            logging       = config.get('PROCESSING', 'logging', fallback='warning'),
        )

        return cls(
            alpha_values = alpha_values,
            grid         = grid,
            theta_values = theta_values,
            truncation   = truncation,
            minimizer    = minimizer,
            outputs      = outputs,
            processing   = processing,
        )

    def to_cfg(self) -> ConfigParser:
        config = ConfigParser()

        # Populate the [SWEEP] section
        config['SWEEP'] = {
            'alpha_values': convert_to_str(self.alpha_values),
            'axis'        : convert_to_str(self.grid.axis),
            'values'      : convert_to_str(self.grid.values),
            'wavenumber_k': convert_to_str(self.grid.wavenumber_k),
            'theta_values': convert_to_str(self.theta_values),
        }

        config['TRUNCATION'] = {
            'tail_tol': convert_to_str(self.truncation.tail_tol),
            'n_cap'   : convert_to_str(self.truncation.n_cap),
        }

        config['MINIMIZER'] = {
            'theta_points' : convert_to_str(self.minimizer.theta_points),
            'phi_points'   : convert_to_str(self.minimizer.phi_points),
            'entropy_tol'  : convert_to_str(self.minimizer.entropy_tol),
            'refine_window': convert_to_str(self.minimizer.refine_window),
        }

        for i, output in enumerate(self.outputs):
            section = 'OUTPUT' if i == 0 else f'OUTPUT_{i}'
            config[section] = {
                'figure_tag': convert_to_str(output.figure_tag),
                'format'    : convert_to_str(output.format),
                'path'      : convert_to_str(output.path),
            }

        config['PROCESSING'] = {
            'num_processes': convert_to_str(self.processing.num_processes),
            'logging'      : convert_to_str(self.processing.logging),
        }

        return config
