# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

"""Catalog case for backwater curves of a single reach."""

from typing import Any, Dict, Optional, Tuple

import numpy as np

from shallow_bench.cases.interfaces import AnalyticCase, CaseKind
from shallow_bench.definitions import (
    DEFAULT_SETTINGS,
    Boundary,
    CatalogSettings,
    ChannelSpec,
    FrictionLaw,
    ProfileType,
    SolutionProfile,
)
from shallow_bench.exceptions import DomainError
from shallow_bench.gvf import GvfProblem, classify_profile, integrate_backwater
from shallow_bench.harness.solver import boundary_for_regime
from shallow_bench.hydraulics import critical_slope

# slope, boundary depth and reach length of each profile with n = 0.03 and q = 1;
# a slope of None is the critical slope of the friction law
PROFILE_DEFAULTS: Dict[str, Tuple[Optional[float], float, float]] = {
    "M1": (0.001, 1.5, 1000.0),
    "M2": (0.001, 0.6, 1000.0),
    "M3": (0.001, 0.3, 2.0),
    "S1": (0.05, 1.0, 5.0),
    "S2": (0.05, 0.4, 100.0),
    "S3": (0.05, 0.2, 100.0),
    "C1": (None, 0.7, 10.0),
    "C3": (None, 0.28, 5.0),
    "H2": (0.0, 1.0, 100.0),
    "H3": (0.0, 0.3, 2.0),
    "A2": (-0.001, 1.0, 100.0),
    "A3": (-0.001, 0.3, 2.0),
}


class GvfCase(AnalyticCase):
    """
    A backwater curve integrated from its control section.

    The declared profile type must be the one the slope and boundary depth produce, so a
    parameter override cannot silently turn an M1 entry into another curve.
    """

    def __init__(
        self,
        settings: CatalogSettings = DEFAULT_SETTINGS,
        profile: str = "M1",
        discharge: float = 1.0,
        slope: Optional[float] = None,
        friction: str = "manning",
        coefficient: float = 0.03,
        boundary_depth: Optional[float] = None,
        reach_length: Optional[float] = None,
    ) -> None:
        expected = ProfileType.from_name(profile)
        defaults = PROFILE_DEFAULTS.get(expected.name)
        if defaults is None and None in (slope, boundary_depth, reach_length):
            raise DomainError(
                f"Profile {expected.name} has no defaults, give slope, boundary_depth "
                "and reach_length"
            )
        law = FrictionLaw.from_name(friction, coefficient)
        d_slope, d_depth, d_length = defaults or (0.0, 0.0, 0.0)
        if slope is not None:
            self._slope = float(slope)
        elif d_slope is None:
            self._slope = critical_slope(law, discharge, settings.gravity)
        else:
            self._slope = d_slope
        self._boundary_depth = d_depth if boundary_depth is None else float(boundary_depth)
        self._reach_length = d_length if reach_length is None else float(reach_length)
        self._discharge = discharge
        self._parameters = {
            "profile": expected.name,
            "discharge": discharge,
            "slope": self._slope,
            "friction": friction,
            "coefficient": coefficient,
            "boundary_depth": self._boundary_depth,
            "reach_length": self._reach_length,
        }
        self._spec = ChannelSpec(
            length=self._reach_length,
            gravity=settings.gravity,
            friction=law,
            dry_tolerance=settings.dry_tolerance,
        )
        actual = classify_profile(self._problem(2))
        if actual != expected:
            raise DomainError(
                f"Slope {self._slope} and boundary depth {self._boundary_depth} give an "
                f"{actual.name} profile, not {expected.name}"
            )
        self._profile_type = expected

    def _problem(self, n_cells: int) -> GvfProblem:
        return GvfProblem(
            spec=self._spec,
            discharge=self._discharge,
            slope=self._slope,
            boundary_depth=self._boundary_depth,
            reach_length=self._reach_length,
            n_cells=n_cells,
        )

    @property
    def kind(self) -> CaseKind:
        return CaseKind.STEADY

    @property
    def spec(self) -> ChannelSpec:
        return self._spec

    @property
    def regime(self) -> str:
        return self._profile_type.name

    @property
    def parameters(self) -> Dict[str, Any]:
        return dict(self._parameters)

    @property
    def profile_type(self) -> ProfileType:
        return self._profile_type

    def generate(
        self,
        n_cells: int,
        time: Optional[float] = None,
        n_cells_y: Optional[int] = None,
    ) -> SolutionProfile:
        if n_cells_y is not None:
            raise DomainError("Backwater curves are one-dimensional")
        profile = integrate_backwater(self._problem(n_cells))
        profile.time = 0.0 if time is None else float(time)
        return profile

    def initial_profile(self, n_cells: int) -> SolutionProfile:
        """Water at the boundary depth everywhere, carrying the discharge."""
        exact = self.generate(n_cells)
        h = np.full_like(exact.h, self._boundary_depth)
        q = np.full_like(exact.h, self._discharge)
        return SolutionProfile(
            grid=exact.grid,
            h=h,
            u=q / h,
            z=exact.z,
            q=q,
            dry_tolerance=self._spec.dry_tolerance,
        )

    def boundaries(self, profile: SolutionProfile) -> Tuple[Boundary, Boundary]:
        return (
            boundary_for_regime(profile, self._spec, left=True),
            boundary_for_regime(profile, self._spec, left=False),
        )
