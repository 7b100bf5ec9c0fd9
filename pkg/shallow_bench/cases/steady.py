# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

"""Catalog cases for steady flows: lake at rest, uniform flow, MacDonald and bump flows."""

import abc
from typing import Any, Dict, Optional, Tuple

import numpy as np

from shallow_bench.ansatz import (
    ConstantDepth,
    DepthAnsatz,
    GaussianBump,
    GaussianBumpDepth,
    LinearDepth,
    ParabolicBump,
    TanhTransitionDepth,
    TopographyAnsatz,
    verify_derivatives,
)
from shallow_bench.cases.interfaces import AnalyticCase, CaseKind
from shallow_bench.definitions import (
    DEFAULT_SETTINGS,
    Boundary,
    BoundaryKind,
    CatalogSettings,
    ChannelSpec,
    FlowRegime,
    FrictionLaw,
    Grid,
    SolutionProfile,
)
from shallow_bench.exceptions import DomainError
from shallow_bench.harness.solver import boundary_for_regime
from shallow_bench.hydraulics import classify_regime, normal_height
from shallow_bench.steady import (
    RegimeLabel,
    SteadyCase,
    bump_flow,
    lake_at_rest,
    macdonald_topography,
)

PERTURBATION = 0.01
""" Relative amplitude of the depth bump added to steady solver starting states. """

DYADIC_BITS = 20
""" Binary digits kept in lake at rest beds, so that h + z equals the level exactly. """


def _dyadic(values: Any) -> np.ndarray:
    scaled = np.ldexp(np.asarray(values, dtype=float), DYADIC_BITS)
    return np.ldexp(np.round(scaled), -DYADIC_BITS)


class SteadyAnalyticCase(AnalyticCase):
    """Shared behaviour of the steady cases."""

    def __init__(self, settings: CatalogSettings, parameters: Dict[str, Any]) -> None:
        self._settings = settings
        self._parameters = parameters

    @property
    def kind(self) -> CaseKind:
        return CaseKind.STEADY

    @property
    def parameters(self) -> Dict[str, Any]:
        return dict(self._parameters)

    @abc.abstractmethod
    def _exact(self, n_cells: int) -> SolutionProfile:
        raise NotImplementedError  # pragma: no cover

    def generate(
        self,
        n_cells: int,
        time: Optional[float] = None,
        n_cells_y: Optional[int] = None,
    ) -> SolutionProfile:
        if n_cells_y is not None:
            raise DomainError("Steady cases are one-dimensional")
        profile = self._exact(n_cells)
        profile.time = 0.0 if time is None else float(time)
        return profile

    def initial_profile(self, n_cells: int) -> SolutionProfile:
        """The exact solution, with a small depth bump unless the water is still."""
        exact = self.generate(n_cells)
        if self.is_rest:
            return exact
        x = exact.grid.x
        length = exact.grid.length
        bump = 1.0 + PERTURBATION * np.exp(-(((x - 0.5 * length) / (0.1 * length)) ** 2))
        h = exact.h * bump
        q = exact.discharge.copy()
        wet = h >= self.spec.dry_tolerance
        return SolutionProfile(
            grid=exact.grid,
            h=h,
            u=np.divide(q, h, out=np.zeros_like(h), where=wet),
            z=exact.z,
            q=np.where(wet, q, 0.0),
            metadata={"perturbation": PERTURBATION},
            dry_tolerance=self.spec.dry_tolerance,
        )

    def boundaries(self, profile: SolutionProfile) -> Tuple[Boundary, Boundary]:
        return (
            boundary_for_regime(profile, self.spec, left=True),
            boundary_for_regime(profile, self.spec, left=False),
        )


class LakeAtRestCase(SteadyAnalyticCase):
    """
    Still water over a parabolic bowl, or around a parabolic island that emerges.

    The bed is rounded to a dyadic grid of values so that h + z reproduces the level
    exactly in floating point.
    """

    def __init__(
        self,
        settings: CatalogSettings = DEFAULT_SETTINGS,
        length: float = 25.0,
        eta: float = 0.5,
        bed: str = "bowl",
        height: float = 0.4,
        half_width: float = 4.0,
    ) -> None:
        super().__init__(
            settings,
            {
                "length": length,
                "eta": eta,
                "bed": bed,
                "height": height,
                "half_width": half_width,
            },
        )
        if bed not in ("bowl", "island"):
            raise DomainError(f"Unknown lake bed '{bed}', expected bowl or island")
        self._spec = ChannelSpec(
            length=length, gravity=settings.gravity, dry_tolerance=settings.dry_tolerance
        )
        self._eta = float(_dyadic(eta))
        self._bed = bed
        self._height = height
        self._half_width = half_width

    @property
    def spec(self) -> ChannelSpec:
        return self._spec

    @property
    def regime(self) -> str:
        return RegimeLabel.REST.value

    @property
    def is_rest(self) -> bool:
        return True

    def bed_elevation(self, x: np.ndarray) -> np.ndarray:
        centre = 0.5 * self._spec.length
        if self._bed == "bowl":
            z = self._height * ((x - centre) / centre) ** 2
        else:
            z = ParabolicBump(self._height, centre, self._half_width).elevation(x)
        return _dyadic(z)

    def _exact(self, n_cells: int) -> SolutionProfile:
        grid = Grid(n_cells, self._spec.length)
        return lake_at_rest(grid, self.bed_elevation(grid.x), self._eta, self._spec)

    def boundaries(self, profile: SolutionProfile) -> Tuple[Boundary, Boundary]:
        return Boundary(BoundaryKind.WALL), Boundary(BoundaryKind.WALL)


def _label_from_depth(h: float, q: float, spec: ChannelSpec) -> RegimeLabel:
    regime = classify_regime(h, q, spec)
    if regime is FlowRegime.SUBCRITICAL:
        return RegimeLabel.SUBCRITICAL
    if regime is FlowRegime.SUPERCRITICAL:
        return RegimeLabel.SUPERCRITICAL
    raise DomainError(f"Uniform flow at depth {h} is {regime.value}")


class UniformFlowCase(SteadyAnalyticCase):
    """Normal flow down a constant slope."""

    def __init__(
        self,
        settings: CatalogSettings = DEFAULT_SETTINGS,
        length: float = 1000.0,
        discharge: float = 2.0,
        slope: float = 0.001,
        friction: str = "manning",
        coefficient: float = 0.033,
    ) -> None:
        super().__init__(
            settings,
            {
                "length": length,
                "discharge": discharge,
                "slope": slope,
                "friction": friction,
                "coefficient": coefficient,
            },
        )
        self._spec = ChannelSpec(
            length=length,
            gravity=settings.gravity,
            friction=FrictionLaw.from_name(friction, coefficient),
            dry_tolerance=settings.dry_tolerance,
        )
        depth = normal_height(self._spec.friction, discharge, slope, settings.gravity)
        if depth is None:
            raise DomainError("Uniform flow needs friction and a positive slope")
        self._depth = depth
        self._case = SteadyCase(
            spec=self._spec,
            discharge=discharge,
            regime=_label_from_depth(depth, discharge, self._spec),
            depth=ConstantDepth(depth),
        )

    @property
    def spec(self) -> ChannelSpec:
        return self._spec

    @property
    def regime(self) -> str:
        return self._case.regime.value

    @property
    def normal_depth(self) -> float:
        return self._depth

    def _exact(self, n_cells: int) -> SolutionProfile:
        profile = macdonald_topography(self._case, n_cells)
        profile.metadata["normal_depth"] = self._depth
        return profile


def build_depth_ansatz(
    name: str,
    length: float,
    h0: float,
    amplitude: float,
    center: float,
    width: float,
    h_upstream: float,
    h_downstream: float,
) -> DepthAnsatz:
    """
    Depth family by name.

    :param name: ``constant``, ``linear``, ``gaussian`` or ``tanh``
    :raises DomainError: for an unknown family
    """
    if name == "constant":
        return ConstantDepth(h0)
    if name == "linear":
        return LinearDepth(h_upstream, h_downstream, length)
    if name == "gaussian":
        return GaussianBumpDepth(h0, amplitude, center, width)
    if name == "tanh":
        return TanhTransitionDepth(h_upstream, h_downstream, center, width)
    raise DomainError(f"Unknown depth ansatz '{name}'")


class MacDonaldCase(SteadyAnalyticCase):
    """A prescribed smooth depth with the bed that makes it steady."""

    def __init__(
        self,
        settings: CatalogSettings = DEFAULT_SETTINGS,
        length: float = 1000.0,
        discharge: float = 2.0,
        regime: str = "subcritical",
        friction: str = "manning",
        coefficient: float = 0.033,
        rain_rate: float = 0.0,
        viscosity: float = 0.0,
        ansatz: str = "gaussian",
        h0: float = 1.5,
        amplitude: float = 0.1,
        center: float = 500.0,
        width: float = 200.0,
        h_upstream: float = 1.0,
        h_downstream: float = 0.5,
    ) -> None:
        super().__init__(
            settings,
            {
                "length": length,
                "discharge": discharge,
                "regime": regime,
                "friction": friction,
                "coefficient": coefficient,
                "rain_rate": rain_rate,
                "viscosity": viscosity,
                "ansatz": ansatz,
                "h0": h0,
                "amplitude": amplitude,
                "center": center,
                "width": width,
                "h_upstream": h_upstream,
                "h_downstream": h_downstream,
            },
        )
        self._spec = ChannelSpec(
            length=length,
            gravity=settings.gravity,
            friction=FrictionLaw.from_name(friction, coefficient),
            rain_rate=rain_rate,
            viscosity=viscosity,
            dry_tolerance=settings.dry_tolerance,
        )
        depth = build_depth_ansatz(
            ansatz, length, h0, amplitude, center, width, h_upstream, h_downstream
        )
        verify_derivatives(depth, length)
        try:
            label = RegimeLabel(regime)
        except ValueError as ex:
            raise DomainError(f"Unknown regime '{regime}'") from ex
        self._case = SteadyCase(
            spec=self._spec, discharge=discharge, regime=label, depth=depth
        )

    @property
    def spec(self) -> ChannelSpec:
        return self._spec

    @property
    def regime(self) -> str:
        return self._case.regime.value

    @property
    def steady_case(self) -> SteadyCase:
        return self._case

    def _exact(self, n_cells: int) -> SolutionProfile:
        return macdonald_topography(self._case, n_cells)


class BumpCase(SteadyAnalyticCase):
    """Frictionless flow over a bump, with or without a hydraulic jump."""

    def __init__(
        self,
        settings: CatalogSettings = DEFAULT_SETTINGS,
        length: float = 25.0,
        discharge: float = 4.42,
        regime: str = "subcritical",
        boundary_depth: Optional[float] = 2.0,
        bed: str = "gaussian",
        height: float = 0.2,
        center: float = 10.0,
        width: float = 1.5,
        half_width: float = 2.0,
    ) -> None:
        super().__init__(
            settings,
            {
                "length": length,
                "discharge": discharge,
                "regime": regime,
                "boundary_depth": boundary_depth,
                "bed": bed,
                "height": height,
                "center": center,
                "width": width,
                "half_width": half_width,
            },
        )
        self._spec = ChannelSpec(
            length=length, gravity=settings.gravity, dry_tolerance=settings.dry_tolerance
        )
        topography: TopographyAnsatz
        if bed == "gaussian":
            topography = GaussianBump(height, center, width)
        elif bed == "parabolic":
            topography = ParabolicBump(height, center, half_width)
        else:
            raise DomainError(f"Unknown bump '{bed}', expected gaussian or parabolic")
        try:
            label = RegimeLabel(regime)
        except ValueError as ex:
            raise DomainError(f"Unknown regime '{regime}'") from ex
        self._case = SteadyCase(
            spec=self._spec,
            discharge=discharge,
            regime=label,
            topography=topography,
            boundary_depth=None if boundary_depth is None else float(boundary_depth),
        )

    @property
    def spec(self) -> ChannelSpec:
        return self._spec

    @property
    def regime(self) -> str:
        return self._case.regime.value

    @property
    def steady_case(self) -> SteadyCase:
        return self._case

    def _exact(self, n_cells: int) -> SolutionProfile:
        return bump_flow(self._case, n_cells)
