# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

"""Catalog cases for transient flows: dam breaks and basin oscillations."""

import dataclasses
from typing import Any, Dict, Optional, Tuple

import numpy as np

from shallow_bench.cases.interfaces import AnalyticCase, CaseKind
from shallow_bench.definitions import (
    DEFAULT_SETTINGS,
    Boundary,
    BoundaryKind,
    CatalogSettings,
    ChannelSpec,
    FrictionLaw,
    Grid,
    SolutionProfile,
)
from shallow_bench.exceptions import DomainError
from shallow_bench.transient import (
    DamBreakSetup,
    DresslerSolution,
    RitterSolution,
    StokerSolution,
    ThackerSetup,
    ThackerSolution,
    ThackerVariant,
    dressler_tip,
    sample_thacker,
)

_DAM_BREAK_MODELS = {
    "ritter": RitterSolution,
    "stoker": StokerSolution,
    "dressler": DresslerSolution,
}


def _walls(profile: SolutionProfile) -> Tuple[Boundary, Boundary]:
    return Boundary(BoundaryKind.WALL), Boundary(BoundaryKind.WALL)


class DamBreakCase(AnalyticCase):
    """Instantaneous removal of a dam on a flat channel closed by walls."""

    def __init__(
        self,
        settings: CatalogSettings = DEFAULT_SETTINGS,
        model: str = "ritter",
        h_left: float = 0.005,
        h_right: float = 0.0,
        dam_position: float = 5.0,
        length: float = 10.0,
        friction: str = "none",
        coefficient: float = 0.0,
        time: float = 6.0,
    ) -> None:
        solution_type = _DAM_BREAK_MODELS.get(model)
        if solution_type is None:
            raise DomainError(f"Unknown dam break model '{model}'")
        if not time > 0:
            raise DomainError("Dam break reference time must be positive")
        self._model = model
        self._time = float(time)
        self._parameters = {
            "model": model,
            "h_left": h_left,
            "h_right": h_right,
            "dam_position": dam_position,
            "length": length,
            "friction": friction,
            "coefficient": coefficient,
            "time": time,
        }
        self._setup = DamBreakSetup(
            h_left=h_left,
            h_right=h_right,
            dam_position=dam_position,
            length=length,
            friction=FrictionLaw.from_name(friction, coefficient),
            gravity=settings.gravity,
            dry_tolerance=settings.dry_tolerance,
        )
        self._solution = solution_type(self._setup)
        # evaluating once validates the model preconditions (dry bed, friction family)
        self._solution.evaluate(np.array([dam_position]), self._time)

    @property
    def kind(self) -> CaseKind:
        return CaseKind.TRANSIENT

    @property
    def spec(self) -> ChannelSpec:
        return self._setup.spec

    @property
    def regime(self) -> str:
        return "dam-break"

    @property
    def parameters(self) -> Dict[str, Any]:
        return dict(self._parameters)

    @property
    def reference_time(self) -> float:
        return self._time

    @property
    def solution(self) -> Any:
        return self._solution

    def _metadata(self, t: float) -> Dict[str, Any]:
        metadata: Dict[str, Any] = {"model": self._model}
        if t <= 0:
            return metadata
        metadata["features"] = self._solution.features(t)
        if isinstance(self._solution, StokerSolution):
            state = self._solution.state
            metadata["stoker"] = dataclasses.asdict(state)
            metadata["shock_position"] = self._setup.dam_position + state.shock_speed * t
        if isinstance(self._solution, DresslerSolution):
            tip = dressler_tip(self._setup, t)
            metadata["tip"] = [tip.position, tip.front]
        return metadata

    def generate(
        self,
        n_cells: int,
        time: Optional[float] = None,
        n_cells_y: Optional[int] = None,
    ) -> SolutionProfile:
        if n_cells_y is not None:
            raise DomainError("Dam breaks are one-dimensional")
        t = self._time if time is None else float(time)
        if t < 0:
            raise DomainError(f"Time must be non-negative, got {t}")
        grid = Grid(n_cells, self._setup.length)
        if t == 0:
            h, u = self._solution.initial(grid.x)
        else:
            h, u = self._solution.evaluate(grid.x, t)
        return SolutionProfile(
            grid=grid,
            h=h,
            u=u,
            z=np.zeros(grid.shape),
            time=t,
            metadata=self._metadata(t),
            dry_tolerance=self._setup.dry_tolerance,
        )

    def initial_profile(self, n_cells: int) -> SolutionProfile:
        return self.generate(n_cells, time=0.0)

    def boundaries(self, profile: SolutionProfile) -> Tuple[Boundary, Boundary]:
        return _walls(profile)


class ThackerCase(AnalyticCase):
    """
    Periodic oscillation of water in a paraboloid basin, with moving shorelines.

    The reference time defaults to half a period, when the surface has swung to the
    opposite side of the basin.
    """

    def __init__(
        self,
        settings: CatalogSettings = DEFAULT_SETTINGS,
        variant: str = "planar",
        dimension: int = 1,
        radius: float = 1.0,
        depth: float = 0.5,
        amplitude: float = 0.5,
        length: float = 4.0,
        time: Optional[float] = None,
        cell_average: bool = False,
    ) -> None:
        try:
            surface = ThackerVariant(variant)
        except ValueError as ex:
            raise DomainError(f"Unknown basin surface '{variant}'") from ex
        self._setup = ThackerSetup(
            radius=radius,
            depth=depth,
            amplitude=amplitude,
            variant=surface,
            dimension=dimension,
            length=length,
            gravity=settings.gravity,
            dry_tolerance=settings.dry_tolerance,
        )
        if time is not None and time < 0:
            raise DomainError("Basin reference time must be non-negative")
        self._time = 0.5 * self._setup.period if time is None else float(time)
        self._cell_average = cell_average
        self._solution = ThackerSolution(self._setup)
        self._parameters = {
            "variant": variant,
            "dimension": dimension,
            "radius": radius,
            "depth": depth,
            "amplitude": amplitude,
            "length": length,
            "time": time,
            "cell_average": cell_average,
        }

    @property
    def kind(self) -> CaseKind:
        return CaseKind.TRANSIENT

    @property
    def spec(self) -> ChannelSpec:
        return self._setup.spec

    @property
    def regime(self) -> str:
        return "oscillation"

    @property
    def parameters(self) -> Dict[str, Any]:
        return dict(self._parameters)

    @property
    def dimension(self) -> int:
        return self._setup.dimension

    @property
    def reference_time(self) -> float:
        return self._time

    @property
    def setup(self) -> ThackerSetup:
        return self._setup

    @property
    def solution(self) -> ThackerSolution:
        return self._solution

    def generate(
        self,
        n_cells: int,
        time: Optional[float] = None,
        n_cells_y: Optional[int] = None,
    ) -> SolutionProfile:
        if n_cells_y is not None and self._setup.dimension == 1:
            raise DomainError("This basin is one-dimensional")
        t = self._time if time is None else float(time)
        return sample_thacker(self._setup, n_cells, t, n_cells_y, self._cell_average)

    def initial_profile(self, n_cells: int) -> SolutionProfile:
        return self.generate(n_cells, time=0.0)

    def boundaries(self, profile: SolutionProfile) -> Tuple[Boundary, Boundary]:
        return _walls(profile)
