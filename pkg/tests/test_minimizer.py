import numpy as np
import pytest

from vacuum_correlations.service.minimizer import golden_section_minimize, grid_argmin


def test_golden_section_minimize():
    x, value = golden_section_minimize(np.cos, 2.0, 4.0, 1e-7)
    assert x == pytest.approx(np.pi, abs=1e-6)
    assert value == pytest.approx(-1.0, abs=1e-12)


def test_golden_section_quadratic():
    x, value = golden_section_minimize(lambda x: (x - 0.3) ** 2, 0.0, 1.0, 1e-8)
    assert x == pytest.approx(0.3, abs=1e-8)
    assert value == pytest.approx(0.0, abs=1e-15)


def test_golden_section_accepts_reversed_interval():
    x, _ = golden_section_minimize(lambda x: (x + 1.0) ** 2, 0.0, -3.0, 1e-6)
    assert x == pytest.approx(-1.0, abs=1e-6)


def test_golden_section_interval_already_small():
    calls = []

    def f(x):
        calls.append(x)
        return x

    x, value = golden_section_minimize(f, 0.0, 1e-9, 1e-6)
    assert x == value == 5e-10
    assert calls == [5e-10]


def test_golden_section_flat_function_keeps_left_end():
    x, value = golden_section_minimize(lambda x: 1.0, 0.0, 1.0, 1e-6)
    assert x < 1e-6
    assert value == 1.0


def test_golden_section_minimum_at_boundary():
    x, _ = golden_section_minimize(lambda x: x, 2.0, 3.0, 1e-7)
    assert x == pytest.approx(2.0, abs=1e-7)


def test_grid_argmin_breaks_ties_in_row_major_order():
    values = np.array([[1.0, 0.0, 0.0],
                       [0.0, 2.0, 0.0]])
    assert grid_argmin(values) == (0, 1)


def test_grid_argmin_unique():
    values = np.array([[3.0, 2.0], [1.0, 5.0]])
    assert grid_argmin(values) == (1, 0)


def test_grid_argmin_near_ties_go_to_first_index():
    values = np.array([[1.0, 0.5 + 1e-14, 0.5],
                       [0.5 - 1e-14, 0.7, 0.9]])
    assert grid_argmin(values) == (1, 0)
    assert grid_argmin(values, tol=1e-10) == (0, 1)


def test_grid_argmin_tolerance_does_not_hide_real_minimum():
    values = np.array([0.3, 0.2, 0.1])
    assert grid_argmin(values, tol=1e-10) == (2,)
