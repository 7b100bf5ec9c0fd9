# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

"""Steady analytic solutions: lake at rest, prescribed-depth flows and flows over a bump."""

import dataclasses
import enum
from typing import Callable, Dict, Optional

import numpy as np
from numpy.typing import ArrayLike
from scipy import integrate, optimize

from shallow_bench import logger
from shallow_bench.ansatz import DepthAnsatz, TopographyAnsatz
from shallow_bench.definitions import (
    DRY_TOLERANCE,
    ChannelSpec,
    FlowRegime,
    Grid,
    SolutionProfile,
)
from shallow_bench.exceptions import (
    BranchError,
    ChokedFlowError,
    DomainError,
    IntegrationError,
    RegimeMismatch,
)
from shallow_bench.hydraulics import classify_regime, critical_height, friction_slope
from shallow_bench.stencils import sixth_order_derivative

QUADRATURE_TOLERANCE = 1e-13
""" Richardson error estimate allowed per interval, relative to the elevation scale. """

MAX_PANELS = 4096
""" Simpson panels per interval before the quadrature gives up. """

CHOKE_TOLERANCE = 1e-12
""" Relative deficit of specific energy below the critical value that counts as choked. """

POLYNOMIAL_TOLERANCE = 1e-12
""" Residual of the Bernoulli cubic accepted after polishing. """


class RegimeLabel(enum.Enum):
    """Regime a steady case claims to have."""

    REST = "rest"
    SUBCRITICAL = "subcritical"
    SUPERCRITICAL = "supercritical"
    TRANSCRITICAL = "transcritical"
    TRANSCRITICAL_SHOCK = "transcritical-shock"


class Branch(enum.Enum):
    """Root of the Bernoulli cubic."""

    SUBCRITICAL = "subcritical"
    SUPERCRITICAL = "supercritical"


@dataclasses.dataclass(frozen=True)
class SteadyCase:
    """
    A steady flow defined either by a depth ansatz or by a topography.

    Depth ansatz cases recover the bed from the momentum balance. Topography cases recover
    the depth from Bernoulli's relation and need ``boundary_depth`` unless the flow is
    transcritical without a jump.
    """

    spec: ChannelSpec
    discharge: float
    regime: RegimeLabel
    depth: Optional[DepthAnsatz] = None
    topography: Optional[TopographyAnsatz] = None
    boundary_depth: Optional[float] = None

    def __post_init__(self) -> None:
        if (self.depth is None) == (self.topography is None):
            raise DomainError("A steady case needs exactly one of a depth or a topography")


def lake_at_rest(
    grid: Grid, z: ArrayLike, eta: float, spec: Optional[ChannelSpec] = None
) -> SolutionProfile:
    """
    Still water at level eta over bed z: h = max(eta - z, 0), u = 0.

    :param grid: the cells
    :param z: bed elevation at cell centres
    :param eta: the free surface level
    """
    bed = np.asarray(z, dtype=float)
    h = np.maximum(eta - bed, 0.0)
    dry_tolerance = spec.dry_tolerance if spec else DRY_TOLERANCE
    return SolutionProfile(
        grid=grid,
        h=h,
        u=np.zeros_like(h),
        z=bed,
        q=np.zeros_like(h),
        metadata={"eta": eta},
        dry_tolerance=dry_tolerance,
    )


def rain_discharge(spec: ChannelSpec, q0: float, x: ArrayLike) -> np.ndarray:
    """
    Steady discharge q(x) = R x + q0 under uniform rain.

    :raises DomainError: if x leaves [0, L]
    """
    positions = np.asarray(x, dtype=float)
    if np.any(positions < 0) or np.any(positions > spec.length):
        raise DomainError(f"Positions must lie in [0, {spec.length}]")
    return spec.rain_rate * positions + q0


def topography_slope(case: SteadyCase, x: ArrayLike) -> np.ndarray:
    """
    Bed slope z'(x) that makes the depth ansatz a steady solution.

    z' = (q^2/(g h^3) - 1) h' - 2 q R / (g h^2) - S_f + mu / (g h) d/dx(h d/dx(q/h)).
    """
    if case.depth is None:
        raise DomainError("Topography recovery needs a depth ansatz")
    spec = case.spec
    g = spec.gravity
    positions = np.asarray(x, dtype=float)
    h = case.depth.depth(positions)
    if np.any(h <= spec.dry_tolerance):
        raise DomainError("The depth ansatz must stay wet")
    dh = case.depth.first_derivative(positions)
    q = spec.rain_rate * positions + case.discharge
    rain = spec.rain_rate
    sf = friction_slope(spec.friction, h, q, g, spec.dry_tolerance)
    slope = (q * q / (g * h**3) - 1.0) * dh - 2.0 * q * rain / (g * h * h) - sf
    if spec.viscosity > 0:
        d2h = case.depth.second_derivative(positions)
        viscous = -(rain * dh + q * d2h) / h + q * dh * dh / (h * h)
        slope = slope + spec.viscosity / (g * h) * viscous
    return slope


def _simpson(
    function: Callable[[np.ndarray], np.ndarray], a: np.ndarray, b: np.ndarray, panels: int
) -> np.ndarray:
    points = a[:, None] + (b - a)[:, None] * np.linspace(0.0, 1.0, panels + 1)
    values = function(points.ravel()).reshape(points.shape)
    return integrate.simpson(values, x=points, axis=1)


def integrate_intervals(
    function: Callable[[np.ndarray], np.ndarray], nodes: np.ndarray
) -> np.ndarray:
    """
    Integral of ``function`` over each interval between consecutive nodes.

    Composite Simpson starting at 4 panels, checked and extrapolated against half the
    panels; panels double until the Richardson estimate meets the tolerance.

    :raises IntegrationError: if the estimate does not converge
    """
    a, b = nodes[:-1], nodes[1:]
    panels = 4
    coarse = _simpson(function, a, b, panels // 2)
    while True:
        fine = _simpson(function, a, b, panels)
        estimate = np.abs(fine - coarse) / 15.0
        scale = max(1.0, float(np.sum(np.abs(fine))))
        worst = float(np.max(estimate))
        if worst <= QUADRATURE_TOLERANCE * scale:
            return fine + (fine - coarse) / 15.0
        if panels >= MAX_PANELS:
            raise IntegrationError(
                f"Topography quadrature did not converge with {panels} panels per cell",
                residual=worst,
            )
        coarse, panels = fine, 2 * panels


def _check_regime(profile: SolutionProfile, label: RegimeLabel, spec: ChannelSpec) -> None:
    regimes = {
        classify_regime(float(h), float(q), spec) for h, q in zip(profile.h, profile.discharge)
    }
    regimes.discard(FlowRegime.CRITICAL)
    if label is RegimeLabel.REST:
        ok = bool(np.all(profile.u == 0))
    elif label is RegimeLabel.SUBCRITICAL:
        ok = regimes <= {FlowRegime.SUBCRITICAL}
    elif label is RegimeLabel.SUPERCRITICAL:
        ok = regimes <= {FlowRegime.SUPERCRITICAL}
    else:
        ok = {FlowRegime.SUBCRITICAL, FlowRegime.SUPERCRITICAL} <= regimes
    if not ok:
        found = sorted(regime.value for regime in regimes)
        raise RegimeMismatch(f"Flow labelled {label.value} has regimes {found}")


def macdonald_topography(case: SteadyCase, n_cells: int) -> SolutionProfile:
    """
    Bed elevation that makes a prescribed depth a steady solution.

    The bed is anchored at z(L) = 0 and integrated upstream interval by interval. Constant
    depth without rain has a constant slope and is integrated exactly.

    :raises DomainError: without a depth ansatz, or if the ansatz dries
    :raises IntegrationError: if the quadrature does not converge
    :raises RegimeMismatch: if the flow does not have the labelled regime
    """
    if case.depth is None:
        raise DomainError("Topography recovery needs a depth ansatz")
    spec = case.spec
    grid = Grid(n_cells, spec.length)
    x = grid.x
    h = case.depth.depth(x)
    if np.any(h <= spec.dry_tolerance):
        raise DomainError("The depth ansatz must stay wet")

    if case.depth.is_constant and spec.rain_rate == 0:
        slope = float(topography_slope(case, x[:1])[0])
        z = slope * (x - spec.length)
        quadrature = "exact"
    else:
        nodes = np.append(x, spec.length)
        increments = integrate_intervals(lambda s: topography_slope(case, s), nodes)
        z = -np.cumsum(increments[::-1])[::-1]
        quadrature = "simpson"

    q = rain_discharge(spec, case.discharge, x)
    profile = SolutionProfile(
        grid=grid,
        h=h,
        u=q / h,
        z=z,
        q=q,
        metadata={
            "ansatz": type(case.depth).__name__,
            "regime": case.regime.value,
            "quadrature": quadrature,
        },
        dry_tolerance=spec.dry_tolerance,
    )
    _check_regime(profile, case.regime, spec)
    return profile


def bernoulli_depth(
    specific_head: ArrayLike, q: float, g: float, branch: Branch
) -> np.ndarray:
    """
    Depth with specific energy h + q^2/(2 g h^2) equal to ``specific_head``.

    Bracketed bisection on the chosen branch of the cubic h^3 - E h^2 + q^2/(2g) = 0,
    vectorized over heads, then Newton polishing.

    :raises ChokedFlowError: if a head is below the critical value 1.5 h_c
    """
    head = np.asarray(specific_head, dtype=float)
    if q == 0:
        if branch is Branch.SUPERCRITICAL:
            raise DomainError("Still water has no supercritical depth")
        return head.copy()
    hc = critical_height(q, g)
    minimum = 1.5 * hc
    if np.any(head < minimum * (1.0 - CHOKE_TOLERANCE)):
        raise ChokedFlowError(
            f"Specific head {float(np.min(head))} is below the critical head {minimum}"
        )
    head = np.maximum(head, minimum)
    k = q * q / (2.0 * g)

    def cubic(h: np.ndarray) -> np.ndarray:
        return h * h * (h - head) + k

    if branch is Branch.SUBCRITICAL:
        lo, hi = np.full_like(head, hc), head.copy()
    else:
        lo, hi = abs(q) / np.sqrt(2.0 * g * head), np.full_like(head, hc)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        positive = cubic(mid) > 0
        if branch is Branch.SUBCRITICAL:
            hi, lo = np.where(positive, mid, hi), np.where(positive, lo, mid)
        else:
            lo, hi = np.where(positive, mid, lo), np.where(positive, hi, mid)
        if np.all(hi - lo <= 4.0 * np.finfo(float).eps * hi):
            break
    h = 0.5 * (lo + hi)
    for _ in range(2):
        derivative = h * (3.0 * h - 2.0 * head)
        usable = np.abs(derivative) > 1e-300
        candidate = h - np.divide(cubic(h), derivative, out=np.zeros_like(h), where=usable)
        better = np.abs(cubic(candidate)) < np.abs(cubic(h))
        h = np.where(usable & better, candidate, h)
    residual = float(np.max(np.abs(cubic(h)))) if h.size else 0.0
    if residual > POLYNOMIAL_TOLERANCE * max(1.0, float(np.max(head)) ** 3):
        raise BranchError(f"Bernoulli cubic residual {residual} after polishing")
    return h


@dataclasses.dataclass(frozen=True)
class BernoulliDepth(DepthAnsatz):
    """
    Frictionless bump flow depth, seen as a depth ansatz.

    Derivatives follow from differentiating the Bernoulli relation: h' = -z' / (1 - Fr^2).
    Only valid on a single branch away from critical depth.
    """

    topography: TopographyAnsatz
    head: float
    discharge: float
    gravity: float
    branch: Branch = Branch.SUBCRITICAL

    def depth(self, x: ArrayLike) -> np.ndarray:
        z = self.topography.elevation(x)
        return bernoulli_depth(self.head - z, self.discharge, self.gravity, self.branch)

    def _froude_term(self, h: np.ndarray) -> np.ndarray:
        return 1.0 - self.discharge**2 / (self.gravity * h**3)

    def first_derivative(self, x: ArrayLike) -> np.ndarray:
        h = self.depth(x)
        return -self.topography.slope(x) / self._froude_term(h)

    def second_derivative(self, x: ArrayLike) -> np.ndarray:
        positions = np.asarray(x, dtype=float)
        h = self.depth(positions)
        dh = self.first_derivative(positions)
        curvature = self.topography.curvature(positions)
        denominator = self._froude_term(h)
        fr_derivative = 3.0 * self.discharge**2 / (self.gravity * h**4) * dh
        numerator = curvature * denominator - self.topography.slope(positions) * fr_derivative
        return -numerator / (denominator * denominator)


def _momentum_function(h: np.ndarray, q: float, g: float) -> np.ndarray:
    return q * q / h + 0.5 * g * h * h


def bump_flow(case: SteadyCase, n_cells: int) -> SolutionProfile:
    """
    Frictionless steady flow over a bump from Bernoulli's relation.

    Subcritical flow is controlled by the downstream depth, supercritical flow by the
    upstream depth. Transcritical flow is critical at the crest and switches from the
    subcritical to the supercritical root there. With a jump, the downstream depth fixes a
    second head and the jump sits where the momentum function q^2/h + g h^2 / 2 of the two
    branches agrees, found by bisection.

    :raises ChokedFlowError: if the boundary head is too small to pass the crest
    :raises BranchError: if the branch structure is ambiguous
    :raises RegimeMismatch: if the flow does not have the labelled regime
    """
    topography = case.topography
    spec = case.spec
    if topography is None:
        raise DomainError("Bump flow needs a topography")
    if not spec.friction.is_frictionless or spec.rain_rate != 0 or spec.viscosity != 0:
        raise DomainError("Bump flow is frictionless, rainless and inviscid")
    grid = Grid(n_cells, spec.length)
    x = grid.x
    z = topography.elevation(x)
    q = case.discharge
    g = spec.gravity
    hc = critical_height(q, g)
    k = q * q / (2.0 * g)
    label = case.regime
    metadata: Dict[str, object] = {"regime": label.value, "critical_depth": hc}

    def boundary_head(position: float, expected: FlowRegime) -> float:
        hb = case.boundary_depth
        if hb is None or classify_regime(hb, q, spec) is not expected:
            raise DomainError(
                f"{label.value} bump flow needs a {expected.value} boundary depth"
            )
        return hb + float(topography.elevation(position)) + k / (hb * hb)

    if label is RegimeLabel.SUBCRITICAL:
        head = boundary_head(spec.length, FlowRegime.SUBCRITICAL)
        h = bernoulli_depth(head - z, q, g, Branch.SUBCRITICAL)
    elif label is RegimeLabel.SUPERCRITICAL:
        head = boundary_head(0.0, FlowRegime.SUPERCRITICAL)
        h = bernoulli_depth(head - z, q, g, Branch.SUPERCRITICAL)
    elif label in (RegimeLabel.TRANSCRITICAL, RegimeLabel.TRANSCRITICAL_SHOCK):
        crest = topography.crest
        if not 0 < crest < spec.length:
            raise BranchError(f"Crest {crest} lies outside the channel")
        z_crest = float(topography.elevation(crest))
        if np.any(z > z_crest * (1.0 + 1e-14) + 1e-14):
            raise BranchError("The crest is not the highest point of the bed")
        head = z_crest + 1.5 * hc
        upstream = x < crest
        h = np.where(
            upstream,
            bernoulli_depth(head - z, q, g, Branch.SUBCRITICAL),
            bernoulli_depth(head - z, q, g, Branch.SUPERCRITICAL),
        )
        h[np.abs(x - crest) <= 1e-12 * spec.length] = hc
        metadata["crest"] = crest
        if label is RegimeLabel.TRANSCRITICAL_SHOCK:
            head_down = boundary_head(spec.length, FlowRegime.SUBCRITICAL)
            shock = _locate_jump(topography, crest, head, head_down, hc, q, g, spec.length)
            downstream = x > shock
            specific = head_down - z[downstream]
            h[downstream] = bernoulli_depth(specific, q, g, Branch.SUBCRITICAL)
            metadata["shock_position"] = shock
    else:
        raise DomainError(f"Bump flow cannot be {label.value}")

    profile = SolutionProfile(
        grid=grid,
        h=h,
        u=q / h,
        z=z,
        q=np.full(n_cells, float(q)),
        metadata=metadata,
        dry_tolerance=spec.dry_tolerance,
    )
    _check_regime(profile, label, spec)
    return profile


def _locate_jump(
    topography: TopographyAnsatz,
    crest: float,
    head_up: float,
    head_down: float,
    hc: float,
    q: float,
    g: float,
    length: float,
) -> float:
    """Position downstream of the crest where the two branches are conjugate."""
    threshold = head_down - 1.5 * hc
    if float(topography.elevation(crest)) <= threshold:
        raise BranchError("The downstream level drowns the crest, the flow stays subcritical")
    if float(topography.elevation(length)) >= threshold:
        raise BranchError("The downstream head is choked at the outlet")
    start = optimize.brentq(
        lambda s: float(topography.elevation(s)) - threshold, crest, length, xtol=1e-14
    )

    def momentum_gap(s: float) -> float:
        z = topography.elevation(s)
        upper = bernoulli_depth(head_up - z, q, g, Branch.SUPERCRITICAL)
        lower = bernoulli_depth(max(head_down - z, 1.5 * hc), q, g, Branch.SUBCRITICAL)
        return float(_momentum_function(upper, q, g) - _momentum_function(lower, q, g))

    if momentum_gap(length) >= 0:
        raise BranchError("No hydraulic jump fits inside the channel")
    if momentum_gap(start) <= 0:
        return start
    position = optimize.bisect(momentum_gap, start, length, xtol=1e-12 * length)
    logger.info("Located hydraulic jump", position=position)
    return float(position)


@dataclasses.dataclass(frozen=True)
class SteadyResidual:
    """Max-norm defects of a discrete steady profile."""

    momentum: float
    discharge: float
    checked_cells: int


def steady_residual(
    profile: SolutionProfile,
    spec: ChannelSpec,
    q0: float,
    exclude: Optional[np.ndarray] = None,
) -> SteadyResidual:
    """
    Discrete defect of the steady momentum balance and of q(x) = R x + q0.

    Uses sixth order differences. Cells within a stencil width of a dry cell, and cells
    flagged in ``exclude``, are not checked.

    :raises StencilError: with fewer than 8 cells
    """
    dx = profile.grid.dx
    g = spec.gravity
    h, z, q = profile.h, profile.z, profile.discharge
    wet = h > spec.dry_tolerance
    flux = np.where(wet, np.divide(q * q, h, out=np.zeros_like(h), where=wet), 0.0)
    flux = flux + 0.5 * g * h * h
    defect = sixth_order_derivative(flux, dx) + g * h * sixth_order_derivative(z, dx)
    if not spec.friction.is_frictionless and np.any(wet):
        sf = np.zeros_like(h)
        sf[wet] = friction_slope(spec.friction, h[wet], q[wet], g, spec.dry_tolerance)
        defect = defect + g * h * sf
    if spec.viscosity > 0:
        u = np.divide(q, h, out=np.zeros_like(h), where=wet)
        defect = defect - spec.viscosity * sixth_order_derivative(
            h * sixth_order_derivative(u, dx), dx
        )

    checked = wet.copy()
    for shift in range(1, 7):
        checked[shift:] &= wet[:-shift]
        checked[:-shift] &= wet[shift:]
    if exclude is not None:
        checked &= ~np.asarray(exclude, dtype=bool)
    momentum = float(np.max(np.abs(defect[checked]))) if np.any(checked) else 0.0
    expected = spec.rain_rate * profile.grid.x + q0
    discharge = float(np.max(np.abs(q[wet] - expected[wet]))) if np.any(wet) else 0.0
    return SteadyResidual(
        momentum=momentum, discharge=discharge, checked_cells=int(checked.sum())
    )
