# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

"""Gradually varied flow: profile classification and backwater integration."""

import dataclasses
import math
from typing import List, Optional, Sequence

import numpy as np

from shallow_bench import logger
from shallow_bench.definitions import (
    ChannelSpec,
    FlowRegime,
    FrictionLaw,
    Grid,
    ProfileType,
    SlopeClass,
    SolutionProfile,
)
from shallow_bench.exceptions import (
    AmbiguousZone,
    CompositionError,
    CriticalSingularity,
    DomainError,
    DryOutError,
    DryStateError,
    PartialProfileError,
)
from shallow_bench.hydraulics import (
    classify_regime,
    classify_slope,
    critical_height,
    friction_slope,
    normal_height,
)

SINGULARITY_GUARD = 1e-6
""" |1 - Fr^2| below which the backwater equation is treated as singular. """

ZONE_TOLERANCE = 1e-6
""" Relative distance to h_n or h_c below which a depth is on a zone boundary. """


@dataclasses.dataclass(frozen=True)
class GvfProblem:
    """A single reach with constant bed slope, discharge and one boundary depth."""

    spec: ChannelSpec
    discharge: float
    slope: float
    boundary_depth: float
    reach_length: float
    n_cells: int
    origin: float = 0.0

    def __post_init__(self) -> None:
        if self.discharge == 0:
            raise DomainError("Gradually varied flow needs a non-zero discharge")
        if not self.boundary_depth > self.spec.dry_tolerance:
            raise DomainError(f"Boundary depth {self.boundary_depth} is dry")
        if not self.reach_length > 0:
            raise DomainError("Reach length must be positive")
        if self.n_cells < 2:
            raise DomainError("A reach needs at least two cells")

    @property
    def law(self) -> FrictionLaw:
        return self.spec.friction

    @property
    def critical_depth(self) -> float:
        return critical_height(self.discharge, self.spec.gravity)

    @property
    def normal_depth(self) -> Optional[float]:
        return normal_height(self.law, self.discharge, self.slope, self.spec.gravity)

    @property
    def grid(self) -> Grid:
        return Grid(self.n_cells, self.reach_length, self.origin)

    def bed(self, x_local: np.ndarray) -> np.ndarray:
        """Bed elevation, zero at the downstream end of the reach."""
        return self.slope * (self.reach_length - x_local)


def gvf_rhs(problem: GvfProblem, h: float) -> float:
    """
    dh/dx = (S0 - S_f(h)) / (1 - Fr(h)^2).

    :raises DryStateError: if h is dry
    :raises CriticalSingularity: if |1 - Fr^2| is below the singularity guard
    """
    spec = problem.spec
    if h <= spec.dry_tolerance:
        raise DryStateError(f"Backwater slope requested on a dry depth {h}")
    q = problem.discharge
    denominator = 1.0 - q * q / (spec.gravity * h**3)
    if abs(denominator) < SINGULARITY_GUARD:
        raise CriticalSingularity(f"Depth {h} is too close to critical depth", depth=h)
    sf = friction_slope(problem.law, h, q, spec.gravity, spec.dry_tolerance)
    return (problem.slope - float(sf)) / denominator


def _near(value: float, reference: Optional[float]) -> bool:
    return reference is not None and abs(value - reference) <= ZONE_TOLERANCE * reference


def classify_profile(problem: GvfProblem) -> ProfileType:
    """
    Profile type from the slope class and the zone of the boundary depth.

    Zone 1 lies above both h_n and h_c, zone 2 between them and zone 3 below both.

    :raises AmbiguousZone: if the boundary depth sits on h_n or h_c
    """
    g = problem.spec.gravity
    slope_class = classify_slope(problem.law, problem.discharge, problem.slope, g)
    h = problem.boundary_depth
    hc = problem.critical_depth
    hn = problem.normal_depth
    if _near(h, hc):
        if slope_class is SlopeClass.CRITICAL:
            return ProfileType(SlopeClass.CRITICAL, 2)
        raise AmbiguousZone(f"Boundary depth {h} is at critical depth {hc}")
    if _near(h, hn):
        raise AmbiguousZone(f"Boundary depth {h} is at normal depth {hn}")

    if slope_class in (SlopeClass.HORIZONTAL, SlopeClass.ADVERSE):
        return ProfileType(slope_class, 2 if h > hc else 3)
    assert hn is not None
    upper, lower = max(hn, hc), min(hn, hc)
    if h > upper:
        zone = 1
    elif h > lower:
        zone = 2
    else:
        zone = 3
    return ProfileType(slope_class, zone)


def _rk4_step(problem: GvfProblem, h: float, dx: float) -> float:
    k1 = gvf_rhs(problem, h)
    k2 = gvf_rhs(problem, h + 0.5 * dx * k1)
    k3 = gvf_rhs(problem, h + 0.5 * dx * k2)
    k4 = gvf_rhs(problem, h + dx * k3)
    return h + dx * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0


def _build_profile(
    problem: GvfProblem, depths: Sequence[float], first_cell: int, metadata: dict
) -> SolutionProfile:
    grid = problem.grid
    n = len(depths)
    sub_grid = Grid(n, n * grid.dx, grid.origin + first_cell * grid.dx)
    x_local = sub_grid.x - problem.origin
    h = np.asarray(depths, dtype=float)
    q = np.full(n, float(problem.discharge))
    return SolutionProfile(
        grid=sub_grid,
        h=h,
        u=q / h,
        z=problem.bed(x_local),
        q=q,
        metadata=metadata,
        dry_tolerance=problem.spec.dry_tolerance,
    )


def _is_subcritical(problem: GvfProblem, h: float) -> bool:
    return problem.discharge**2 / (problem.spec.gravity * h**3) < 1.0


def _arrest(
    problem: GvfProblem,
    depths: List[float],
    upstream_march: bool,
    position: float,
    profile_type: str,
) -> PartialProfileError:
    """Wrap the cells integrated so far into a partial profile error."""
    partial = None
    if depths:
        n = problem.n_cells
        first_cell = n - len(depths) if upstream_march else 0
        ordered = depths[::-1] if upstream_march else depths
        partial = _build_profile(problem, ordered, first_cell, {"profile_type": profile_type})
    return PartialProfileError(
        f"Profile reached critical depth near x={position}", position=position, profile=partial
    )


def integrate_backwater(problem: GvfProblem) -> SolutionProfile:
    """
    Integrate the backwater equation away from the control section.

    Subcritical boundaries are downstream controls and the integration marches upstream;
    supercritical boundaries are upstream controls and it marches downstream. Classic RK4
    with a half step from the boundary face to the first cell centre, then one full step
    per cell and a final half step to the far face. The bed is z = S0 (L - x), zero at the
    downstream end; metadata holds the face depths and the upstream bed elevation for
    composing reaches. Critical depth met on the final half step still yields every cell
    centre; the far face depth is then h_c and ``critical_face`` is set.

    :raises DomainError: if the boundary regime is critical
    :raises PartialProfileError: if the march reaches critical depth inside the reach
    :raises DryOutError: if the depth falls below the dry tolerance
    """
    spec = problem.spec
    h_boundary = problem.boundary_depth
    regime = classify_regime(h_boundary, problem.discharge, spec)
    if regime is FlowRegime.CRITICAL:
        raise DomainError("A critical boundary depth is not a valid control")

    profile_type: Optional[ProfileType]
    try:
        profile_type = classify_profile(problem)
    except AmbiguousZone:
        if not _near(h_boundary, problem.normal_depth):
            raise
        # uniform flow
        profile_type = None
    type_name = profile_type.name if profile_type else "uniform"

    upstream_march = regime is FlowRegime.SUBCRITICAL
    n = problem.n_cells
    dx = problem.grid.dx
    step = -dx if upstream_march else dx
    x = problem.reach_length if upstream_march else 0.0
    logger.info(
        "Integrating backwater profile",
        profile_type=type_name,
        direction="upstream" if upstream_march else "downstream",
        n_cells=n,
    )

    depths: List[float] = []
    h = h_boundary
    critical_face = False
    for k, increment in enumerate([0.5 * step] + [step] * (n - 1) + [0.5 * step]):
        try:
            h_next = h if profile_type is None else _rk4_step(problem, h, increment)
        except CriticalSingularity as ex:
            if k == n:
                critical_face = True
                break
            position = problem.origin + x
            raise _arrest(problem, depths, upstream_march, position, type_name) from ex
        except DryStateError as ex:
            raise DryOutError(
                f"Profile dried out near x={problem.origin + x}", position=problem.origin + x
            ) from ex
        if not (math.isfinite(h_next) and h_next > spec.dry_tolerance):
            raise DryOutError(
                f"Profile dried out near x={problem.origin + x + increment}",
                position=problem.origin + x + increment,
            )
        if _is_subcritical(problem, h_next) != upstream_march:
            if k == n:
                critical_face = True
                break
            raise _arrest(problem, depths, upstream_march, problem.origin + x, type_name)
        h = h_next
        x += increment
        if k < n:
            depths.append(h)

    if critical_face:
        # every cell centre is known, only the far face reached critical depth
        h = problem.critical_depth
        logger.warning(
            "Profile reaches critical depth at the far face",
            profile_type=type_name,
            position=problem.origin + x + 0.5 * step,
        )

    metadata = {
        "profile_type": type_name,
        "discharge": problem.discharge,
        "slope": problem.slope,
        "upstream_depth": h if upstream_march else h_boundary,
        "downstream_depth": h_boundary if upstream_march else h,
        "upstream_bed": problem.slope * problem.reach_length,
        "critical_face": critical_face,
    }
    return _build_profile(problem, depths[::-1] if upstream_march else depths, 0, metadata)


def concatenate_reaches(profiles: Sequence[SolutionProfile]) -> SolutionProfile:
    """
    Join contiguous reaches into one profile.

    Reaches must share the cell size and discharge. Bed elevations are shifted so that the
    bed is continuous across every junction and zero at the downstream end.

    :raises CompositionError: if reaches are not contiguous or have different discharge
    """
    if not profiles:
        raise CompositionError("No reaches to concatenate")
    if len(profiles) == 1:
        return profiles[0]
    first = profiles[0]
    dx = first.grid.dx
    q0 = float(first.discharge[0])
    for previous, current in zip(profiles, profiles[1:]):
        if current.grid.is_2d or previous.grid.is_2d:
            raise CompositionError("Only one-dimensional reaches can be concatenated")
        if abs(current.grid.dx - dx) > 1e-12 * dx:
            raise CompositionError("Reaches have different cell sizes")
        end = previous.grid.origin + previous.grid.length
        if abs(current.grid.origin - end) > 1e-9 * max(1.0, abs(end)):
            raise CompositionError(
                f"Reach starting at {current.grid.origin} does not follow "
                f"reach ending at {end}"
            )
    for profile in profiles:
        if not np.all(np.abs(profile.discharge - q0) <= 1e-12 * abs(q0)):
            raise CompositionError("Reaches carry different discharges")

    offsets = [0.0] * len(profiles)
    for k in range(len(profiles) - 2, -1, -1):
        offsets[k] = offsets[k + 1] + _upstream_bed(profiles[k + 1])

    h = np.concatenate([p.h for p in profiles])
    u = np.concatenate([p.u for p in profiles])
    z = np.concatenate([p.z + offset for p, offset in zip(profiles, offsets)])
    q = np.concatenate([p.discharge for p in profiles])
    total = sum(p.grid.length for p in profiles)
    metadata = {
        "reaches": [p.metadata.get("profile_type", "") for p in profiles],
        "junction_depths": [
            [p.metadata.get("downstream_depth"), nxt.metadata.get("upstream_depth")]
            for p, nxt in zip(profiles, profiles[1:])
        ],
        "upstream_bed": offsets[0] + _upstream_bed(first),
    }
    return SolutionProfile(
        grid=Grid(len(h), total, first.grid.origin),
        h=h,
        u=u,
        z=z,
        q=q,
        time=first.time,
        metadata=metadata,
        dry_tolerance=first.dry_tolerance,
    )


def _upstream_bed(profile: SolutionProfile) -> float:
    if "upstream_bed" in profile.metadata:
        return float(profile.metadata["upstream_bed"])
    if len(profile.z) < 2:
        return float(profile.z[0])
    return float(profile.z[0] + 0.5 * (profile.z[0] - profile.z[1]))
