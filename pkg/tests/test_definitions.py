# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

"""Tests for the shared dataclasses."""

import numpy as np
import pytest

from shallow_bench.definitions import (
    GRAVITY,
    Boundary,
    BoundaryKind,
    CatalogSettings,
    ChannelSpec,
    FrictionFamily,
    FrictionLaw,
    Grid,
    ProfileType,
    SlopeClass,
    SolutionProfile,
)
from shallow_bench.exceptions import DomainError


def test_friction_factor():
    """Test the dimensionless friction factor of each family."""
    assert FrictionLaw.manning(0.03).cf() == pytest.approx(0.0009)
    assert FrictionLaw.darcy_weisbach(0.08).cf(10.0) == pytest.approx(0.001)
    assert FrictionLaw.chezy(40.0).cf() == pytest.approx(1.0 / 1600.0)
    assert FrictionLaw.none().cf() == 0.0
    assert FrictionLaw.manning(0.03).depth_exponent == pytest.approx(10.0 / 3.0)
    assert FrictionLaw.chezy(40.0).depth_exponent == 3.0


def test_friction_from_name():
    """Test friction laws are built from catalog names."""
    law = FrictionLaw.from_name("Darcy-Weisbach", 0.05)
    assert law.family is FrictionFamily.DARCY_WEISBACH
    assert FrictionLaw.from_name("none").is_frictionless
    with pytest.raises(DomainError):
        FrictionLaw.from_name("strickler", 30.0)
    with pytest.raises(DomainError):
        FrictionLaw.from_name("manning", 0.0)


def test_channel_spec_validation():
    """Test physical settings reject impossible values."""
    assert ChannelSpec(length=10.0).gravity == GRAVITY
    invalid = [
        {"length": 0.0},
        {"length": 1.0, "gravity": -1.0},
        {"length": 1.0, "rain_rate": -1.0},
    ]
    for bad in invalid:
        with pytest.raises(DomainError):
            ChannelSpec(**bad)


def test_grid_coordinates():
    """Test cell centres and faces of a uniform grid."""
    grid = Grid(4, 2.0, origin=1.0)
    assert grid.dx == 0.5
    np.testing.assert_allclose(grid.x, [1.25, 1.75, 2.25, 2.75])
    np.testing.assert_allclose(grid.faces, [1.0, 1.5, 2.0, 2.5, 3.0])
    assert grid.shape == (4,)
    assert not grid.is_2d
    with pytest.raises(DomainError):
        grid.dy


def test_grid_2d():
    """Test two-dimensional grids index y first."""
    grid = Grid(4, 2.0, n_cells_y=2, width=1.0)
    assert grid.shape == (2, 4)
    assert grid.cell_area == pytest.approx(0.25)
    np.testing.assert_allclose(grid.y, [0.25, 0.75])
    with pytest.raises(DomainError):
        Grid(4, 2.0, n_cells_y=2)
    with pytest.raises(DomainError):
        Grid(0, 1.0)


def test_grid_matches():
    """Test grids compare by their cells."""
    assert Grid(10, 1.0).matches(Grid(10, 1.0 + 1e-15))
    assert not Grid(10, 1.0).matches(Grid(11, 1.0))
    assert not Grid(10, 1.0).matches(Grid(10, 1.0, origin=0.5))


def test_solution_profile_defaults():
    """Test discharge defaults to h u."""
    grid = Grid(3, 3.0)
    profile = SolutionProfile(grid, h=[1.0, 2.0, 0.0], u=[1.0, 0.5, 0.0], z=[0.0, 0.0, 0.0])
    np.testing.assert_allclose(profile.discharge, [1.0, 1.0, 0.0])
    np.testing.assert_allclose(profile.free_surface, [1.0, 2.0, 0.0])
    np.testing.assert_array_equal(profile.wet, [True, True, False])


def test_solution_profile_validation():
    """Test profiles reject negative depth, shape mismatches and moving dry cells."""
    grid = Grid(2, 1.0)
    with pytest.raises(DomainError):
        SolutionProfile(grid, h=[1.0, -1.0], u=[0.0, 0.0], z=[0.0, 0.0])
    with pytest.raises(DomainError):
        SolutionProfile(grid, h=[1.0], u=[0.0], z=[0.0])
    with pytest.raises(DomainError):
        SolutionProfile(grid, h=[1.0, 0.0], u=[0.0, 1.0], z=[0.0, 0.0])
    with pytest.raises(DomainError):
        SolutionProfile(grid, h=[1.0, np.nan], u=[0.0, 0.0], z=[0.0, 0.0])


def test_profile_types():
    """Test the thirteen admissible profile types."""
    names = sorted(profile.name for profile in ProfileType.all())
    assert len(names) == 13
    assert "H1" not in names and "A1" not in names
    assert ProfileType.from_name("m2") == ProfileType(SlopeClass.MILD, 2)
    with pytest.raises(DomainError):
        ProfileType.from_name("H1")
    with pytest.raises(DomainError):
        ProfileType.from_name("X1")


def test_boundary_validation():
    """Test boundaries carry the values their kind imposes."""
    assert Boundary(BoundaryKind.STATE, depth=1.0, discharge=2.0).imposed_values == 2
    assert Boundary(BoundaryKind.DEPTH, depth=1.0).imposed_values == 1
    assert Boundary().imposed_values == 0
    with pytest.raises(DomainError):
        Boundary(BoundaryKind.DEPTH)
    with pytest.raises(DomainError):
        Boundary(BoundaryKind.DISCHARGE)


def test_catalog_settings_validation():
    """Test catalog settings reject impossible values."""
    with pytest.raises(DomainError):
        CatalogSettings(max_steps=0)
    with pytest.raises(DomainError):
        CatalogSettings(steady_threshold=0.0)
