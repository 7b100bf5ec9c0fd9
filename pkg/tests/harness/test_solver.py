# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

import numpy as np
import pytest

from shallow_bench.cases.steady import LakeAtRestCase, UniformFlowCase
from shallow_bench.cases.transient import DamBreakCase, ThackerCase
from shallow_bench.definitions import (
    Boundary,
    BoundaryKind,
    ChannelSpec,
    Grid,
    SolutionProfile,
)
from shallow_bench.exceptions import DomainError, HarnessError, NumericalFailure
from shallow_bench.harness.solver import (
    FiniteVolumeSolver,
    SchemeConfig,
    TopographyTreatment,
    boundary_for_regime,
    run_solver,
)

WALLS = (Boundary(BoundaryKind.WALL), Boundary(BoundaryKind.WALL))


@pytest.fixture(name="lake")
def _lake():
    return LakeAtRestCase()


def test_scheme_config():
    """Test the Courant number and the step cap are checked"""
    assert SchemeConfig().to_dict() == {
        "flux": "rusanov",
        "topography": "hydrostatic",
        "cfl": 0.5,
        "left": None,
        "right": None,
        "max_steps": None,
    }
    scheme = SchemeConfig(left=Boundary(BoundaryKind.DEPTH, depth=1.0))
    assert scheme.to_dict()["left"] == {"kind": "depth", "depth": 1.0, "discharge": None}
    with pytest.raises(DomainError):
        SchemeConfig(cfl=1.5)
    with pytest.raises(DomainError):
        SchemeConfig(cfl=0.0)
    with pytest.raises(DomainError):
        SchemeConfig(max_steps=0)
    assert FiniteVolumeSolver().name == "rusanov-hydrostatic"


def test_hydrostatic_scheme_keeps_lake_at_rest(lake):
    """Test still water over a bowl stays still to round-off for ten thousand steps"""
    initial = lake.initial_profile(50)
    result = FiniteVolumeSolver().run(initial, lake.spec, 2000.0, WALLS)
    assert result.metadata["steps"] >= 10000
    assert result.time == 2000.0
    assert np.max(np.abs(result.h - initial.h)) <= 1e-14
    assert np.max(np.abs(result.discharge)) <= 1e-14


def test_naive_scheme_breaks_lake_at_rest(lake):
    """Test a centred bed slope source sets still water in motion"""
    initial = lake.initial_profile(50)
    solver = FiniteVolumeSolver(SchemeConfig(topography=TopographyTreatment.NAIVE))
    assert solver.name == "rusanov-naive"
    result = solver.run(initial, lake.spec, 10.0, WALLS)
    assert np.max(np.abs(result.discharge)) > 1e-6


def test_walls_conserve_mass():
    """Test a dam break between walls keeps its volume"""
    case = DamBreakCase(model="stoker", h_left=1.0, h_right=0.1, time=0.5)
    initial = case.initial_profile(100)
    result = FiniteVolumeSolver().run(initial, case.spec, 0.5, case.boundaries(initial))
    assert np.sum(result.h) == pytest.approx(np.sum(initial.h), rel=1e-12)
    assert np.all(result.h >= 0)


def test_walls_conserve_mass_over_long_runs():
    """Test a dam break sloshing between walls keeps its volume for ten thousand steps"""
    case = DamBreakCase(model="stoker", h_left=1.0, h_right=0.1, time=0.5)
    initial = case.initial_profile(100)
    result = FiniteVolumeSolver().run(initial, case.spec, 300.0, WALLS)
    assert result.metadata["steps"] >= 10000
    assert np.sum(result.h) == pytest.approx(np.sum(initial.h), rel=1e-12)
    assert np.all(result.h > 0)


def test_perturbation_stays_in_numerical_domain_of_dependence():
    """Test a bump in still water reaches at most one cell per step"""
    spec = ChannelSpec(length=200.0)
    h = np.ones(200)
    h[100] += 0.01
    initial = SolutionProfile(grid=Grid(200, 200.0), h=h, u=np.zeros(200), z=np.zeros(200))
    result = FiniteVolumeSolver().run(initial, spec, 2.0, WALLS)
    steps = result.metadata["steps"]
    # the scheme must see at least as far as the fastest wave travels
    assert steps * initial.grid.dx >= np.sqrt(9.81 * 1.01) * 2.0
    far = np.abs(np.arange(200) - 100) > steps
    assert np.any(~far & (result.h != 1.0))
    np.testing.assert_array_equal(result.h[far], 1.0)
    np.testing.assert_array_equal(result.discharge[far], 0.0)


def test_run_validation(lake):
    """Test runs go forward in time, in one dimension and within the step cap"""
    initial = lake.initial_profile(10)
    with pytest.raises(DomainError):
        FiniteVolumeSolver().run(initial, lake.spec, -1.0, WALLS)
    basin = ThackerCase(dimension=2, depth=0.1)
    with pytest.raises(DomainError):
        FiniteVolumeSolver().run(basin.initial_profile(8), basin.spec, 1.0, WALLS)
    with pytest.raises(HarnessError, match="Step cap"):
        FiniteVolumeSolver(SchemeConfig(max_steps=3)).run(initial, lake.spec, 100.0, WALLS)


def test_non_finite_state_is_reported():
    """Test a blown up state names the step and the cell"""
    spec = ChannelSpec(length=1.0)
    h = np.ones(4)
    u = np.array([0.0, np.inf, 0.0, 0.0])
    initial = SolutionProfile(grid=Grid(4, 1.0), h=h, u=u, z=np.zeros(4))
    with np.errstate(all="ignore"):
        with pytest.raises(NumericalFailure) as error:
            FiniteVolumeSolver().run(initial, spec, 1.0, WALLS)
    assert error.value.step == 0


def test_run_to_steady_state(lake):
    """Test still water converges at once and a cap stops a perturbed run"""
    initial = lake.initial_profile(20)
    result = FiniteVolumeSolver().run_to_steady_state(initial, lake.spec, WALLS, 1e-10, 100)
    assert result.metadata["converged"] is True
    assert result.metadata["steps"] == 1

    uniform = UniformFlowCase()
    start = uniform.initial_profile(20)
    capped = FiniteVolumeSolver(SchemeConfig(max_steps=5)).run_to_steady_state(
        start, uniform.spec, uniform.boundaries(uniform.generate(20)), 1e-10, 100
    )
    assert capped.metadata["converged"] is False
    assert capped.metadata["steps"] == 5
    assert capped.time > 0


def test_boundary_for_regime():
    """Test each end imposes as many values as its characteristics require"""
    spec = ChannelSpec(length=10.0)
    grid = Grid(2, 10.0)
    calm = SolutionProfile(grid=grid, h=[1.0, 1.0], u=[0.5, 0.5], z=[0.0, 0.0])
    assert boundary_for_regime(calm, spec, left=True) == Boundary(
        BoundaryKind.DISCHARGE, discharge=0.5
    )
    assert boundary_for_regime(calm, spec, left=False) == Boundary(
        BoundaryKind.DEPTH, depth=1.0
    )
    fast = SolutionProfile(grid=grid, h=[0.1, 0.1], u=[5.0, 5.0], z=[0.0, 0.0])
    left = boundary_for_regime(fast, spec, left=True)
    assert left.kind is BoundaryKind.STATE
    assert left.depth == 0.1 and left.discharge == pytest.approx(0.5)
    assert boundary_for_regime(fast, spec, left=False).kind is BoundaryKind.FREE
    dry = SolutionProfile(grid=grid, h=[0.0, 0.0], u=[0.0, 0.0], z=[0.0, 0.0])
    assert boundary_for_regime(dry, spec, left=True).kind is BoundaryKind.FREE


def test_run_solver_derives_boundaries():
    """Test boundaries missing from the scheme come from the initial state"""
    uniform = UniformFlowCase()
    initial = uniform.generate(20)
    result = run_solver(initial, uniform.spec, SchemeConfig(), 1.0)
    assert result.time == 1.0
    np.testing.assert_allclose(result.h, initial.h, rtol=1e-2)
