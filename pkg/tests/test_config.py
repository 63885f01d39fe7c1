import configparser
import math
import os

import pytest

from vacuum_correlations.enums.config import FigureTag, GridAxis, OutputFormat
from vacuum_correlations.models.config import SweepConfig
from vacuum_correlations.models.exception import ConfigError
from vacuum_correlations.service.sweep import load_preset

EXAMPLE_CFG = os.path.join(os.path.dirname(__file__), 'example_sweep.cfg')


def _parse(text: str) -> SweepConfig:
    config = configparser.ConfigParser()
    config.read_string(text)
    return SweepConfig.from_cfg(config)


def test_reads_example_config():
    config = SweepConfig.from_cfg_file(EXAMPLE_CFG)
    assert config.alpha_values == [-math.inf, -2.0, -1.0]
    assert config.grid.axis == GridAxis.Q
    assert config.grid.values == [0.0, 0.3, 0.6]
    assert config.minimizer.theta_points == 16
    assert config.minimizer.phi_points == 1
    assert config.truncation.tail_tol == 1e-12
    assert len(config.outputs) == 1
    assert config.outputs[0].figure_tag == FigureTag.FIG6_DISCORD_CURVES
    assert config.outputs[0].format == OutputFormat.CSV
    assert config.figure_tags == [FigureTag.FIG6_DISCORD_CURVES]


def test_cfg_round_trip(tmp_path):
    config = SweepConfig.from_cfg_file(EXAMPLE_CFG)
    path = tmp_path / 'round_trip.cfg'
    with open(path, 'w') as f:
        config.to_cfg().write(f)
    assert SweepConfig.from_cfg_file(str(path)).model_dump() == config.model_dump()


def test_defaults_and_linspace_grid():
    config = _parse("""
[SWEEP]
start = 1
stop = 3
num = 5
""")
    assert config.alpha_values == [-math.inf]
    assert config.grid.axis == GridAxis.HUBBLE
    assert config.grid.values == [1.0, 1.5, 2.0, 2.5, 3.0]
    assert config.grid.wavenumber_k == 1.0
    assert config.truncation.n_cap == 4096
    assert config.minimizer.theta_points == 64
    assert config.minimizer.phi_points == 32
    assert config.theta_values is None
    assert config.outputs == []


def test_theta_grid():
    config = _parse("""
[SWEEP]
axis = t
values = 0.5
theta_num = 3
""")
    assert config.theta_values == pytest.approx([0.0, math.pi / 2, math.pi])


def test_several_outputs():
    config = _parse("""
[SWEEP]
values = 1
[OUTPUT]
figure_tag = FIG4
[OUTPUT_JSON]
figure_tag = FIG4_MUTUAL_INFO
format = json
path = fig4.json
""")
    assert [o.format for o in config.outputs] == [OutputFormat.CSV, OutputFormat.JSON]
    assert config.figure_tags == [FigureTag.FIG4_MUTUAL_INFO]


@pytest.mark.parametrize("body", [
    "[SWEEP]\nalpha_values = 0.5\nvalues = 1",
    "[SWEEP]\nalpha_values = -1,-2\nvalues = 1",
    "[SWEEP]\nvalues = 2,1",
    "[SWEEP]\nvalues =",
    "[SWEEP]\naxis = q\nvalues = 0.5,1.0",
    "[SWEEP]\naxis = hubble\nvalues = 0,1",
    "[SWEEP]\naxis = sideways\nvalues = 1",
    "[SWEEP]\nvalues = 1\ntheta_values = 4",
    "[SWEEP]\nvalues = 1\n[TRUNCATION]\nn_cap = 4",
    "[SWEEP]\nvalues = 1\n[MINIMIZER]\ntheta_points = 2",
    "[SWEEP]\nvalues = 1\n[OUTPUT]\nfigure_tag = FIG9",
    "[TRUNCATION]\nn_cap = 100",
])
def test_invalid_configs(body):
    with pytest.raises(ConfigError):
        _parse(body)


def test_missing_file():
    with pytest.raises(ConfigError):
        SweepConfig.from_cfg_file('/nonexistent/sweep.cfg')


def test_hash_ignores_processing_and_paths():
    base = SweepConfig.from_cfg_file(EXAMPLE_CFG)
    other = base.model_copy(deep=True)
    other.processing.num_processes = 8
    other.outputs[0].path = 'elsewhere.csv'
    assert other.config_hash() == base.config_hash()

    changed = base.model_copy(deep=True)
    changed.minimizer.theta_points = 32
    assert changed.config_hash() != base.config_hash()


@pytest.mark.parametrize("tag", list(FigureTag))
def test_presets_load(tag):
    config = load_preset(tag)
    assert config.figure_tags == [tag]


def test_preset_short_tag():
    assert load_preset('fig6').figure_tags == [FigureTag.FIG6_DISCORD_CURVES]
    with pytest.raises(ConfigError):
        load_preset('FIG9')


def test_negativity_preset_approaches_zero_alpha():
    alphas = load_preset('FIG3').alpha_values
    assert alphas[-4:] == [-1e-3, -1e-4, -1e-5, -1e-6]


@pytest.mark.parametrize("tag", ['FIG5', 'FIG6'])
def test_discord_presets_emit_euclidean_and_finite_alpha(tag):
    alphas = load_preset(tag).alpha_values
    assert alphas[:2] == [-math.inf, -20.0]
