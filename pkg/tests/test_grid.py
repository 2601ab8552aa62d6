"""Grid geometry and scalar-field container behavior."""

import numpy as np
import pytest

from traitfront.errors import ConfigError
from traitfront.grid import FIELD_TAGS, HalfPlaneGrid, ScalarField


def test_spacings_count_nodes_not_cells():
    grid = HalfPlaneGrid(-1.0, 3.0, 2.5, 401, 201)
    assert grid.h_x == pytest.approx(0.01)
    assert grid.h_theta == pytest.approx(0.0125)
    assert grid.shape == (201, 401)


def test_node_arrays_hit_the_extents_exactly():
    grid = HalfPlaneGrid(0.0, 2.0, 1.0, 5, 4)
    assert grid.x_nodes()[0] == 0.0 and grid.x_nodes()[-1] == 2.0
    assert grid.theta_nodes()[0] == 0.0 and grid.theta_nodes()[-1] == 1.0
    X, TH = grid.mesh()
    assert X.shape == grid.shape == TH.shape


def test_degenerate_extents_and_tiny_grids_are_rejected():
    with pytest.raises(ConfigError):
        HalfPlaneGrid(1.0, 1.0, 2.5, 10, 10)
    with pytest.raises(ConfigError):
        HalfPlaneGrid(0.0, 1.0, -2.5, 10, 10)
    with pytest.raises(ConfigError):
        HalfPlaneGrid(0.0, 1.0, 1.0, 3, 10)


def test_cell_unit_is_the_larger_spacing():
    grid = HalfPlaneGrid(0.0, 4.0, 1.0, 5, 11)  # h_x = 1.0, h_theta = 0.1
    assert grid.cell_unit() == pytest.approx(1.0)


def test_interp_reproduces_affine_fields_exactly():
    grid = HalfPlaneGrid(-1.0, 3.0, 2.0, 21, 17)
    X, TH = grid.mesh()
    field = ScalarField(grid, 2.0 * X - 0.5 * TH + 1.0, 0.0, "d")
    xs = np.array([-0.73, 0.0, 1.234, 2.99])
    ths = np.array([0.01, 0.5, 1.111, 1.99])
    assert field.interp(xs, ths) == pytest.approx(2.0 * xs - 0.5 * ths + 1.0)
    # scalar call returns a plain float
    assert isinstance(field.interp(0.3, 0.4), float)


def test_interp_clamps_outside_the_grid():
    grid = HalfPlaneGrid(0.0, 1.0, 1.0, 5, 5)
    field = ScalarField(grid, np.tile(np.linspace(0.0, 1.0, 5), (5, 1)), 0.0, "d")
    assert field.interp(-10.0, 0.5) == pytest.approx(0.0)
    assert field.interp(10.0, 0.5) == pytest.approx(1.0)


def test_field_rejects_unknown_tags_and_shape_mismatch():
    grid = HalfPlaneGrid(0.0, 1.0, 1.0, 5, 5)
    with pytest.raises(ConfigError):
        ScalarField(grid, np.zeros(grid.shape), 0.0, "q")
    with pytest.raises(ConfigError):
        ScalarField(grid, np.zeros((4, 4)), 0.0, "u")
    assert set("uvIJwd") == set(FIELD_TAGS)


def test_range_violation_reflects_each_tag_convention():
    grid = HalfPlaneGrid(0.0, 1.0, 1.0, 5, 5)
    ones = np.ones(grid.shape)
    assert ScalarField(grid, ones, 0.0, "u").range_violation() == 0.0
    assert ScalarField(grid, 1.25 * ones, 0.0, "u").range_violation() == pytest.approx(0.25)
    assert ScalarField(grid, -0.5 * ones, 0.0, "I").range_violation() == pytest.approx(0.5)
    # J may be negative, but no lower than -time
    assert ScalarField(grid, -1.0 * ones, 1.0, "J").range_violation() == pytest.approx(0.0)
    assert ScalarField(grid, -1.5 * ones, 1.0, "J").range_violation() == pytest.approx(0.5)


def test_check_range_raises_on_violation():
    grid = HalfPlaneGrid(0.0, 1.0, 1.0, 5, 5)
    good = ScalarField(grid, np.full(grid.shape, 0.5), 0.0, "w")
    assert good.check_range()
    bad = ScalarField(grid, np.full(grid.shape, 2.0), 0.0, "w")
    with pytest.raises(ValueError):
        bad.check_range()


def test_copy_is_deep_for_values():
    grid = HalfPlaneGrid(0.0, 1.0, 1.0, 5, 5)
    a = ScalarField(grid, np.zeros(grid.shape), 0.0, "u")
    b = a.copy()
    b.values[0, 0] = 1.0
    assert a.values[0, 0] == 0.0
