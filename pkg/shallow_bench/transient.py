# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

"""Transient analytic solutions: dam breaks and oscillations in a paraboloid basin."""

import abc
import dataclasses
import enum
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike
from scipy import optimize

from shallow_bench.definitions import (
    DRY_TOLERANCE,
    GRAVITY,
    ChannelSpec,
    FrictionFamily,
    FrictionLaw,
    Grid,
    SolutionProfile,
)
from shallow_bench.exceptions import DomainError, RootFindingError, StencilError
from shallow_bench.hydraulics import friction_slope
from shallow_bench.stencils import fourth_order_central

ROOT_TOLERANCE = 1e-15
""" Absolute depth tolerance of the Stoker compatibility root. """

State = Tuple[np.ndarray, ...]
# (h, u) in 1D, (h, u, v) in 2D


def _check_time(t: float) -> None:
    if not t > 0:
        raise DomainError(f"Dam break solutions need t > 0, got {t}")


@dataclasses.dataclass(frozen=True)
class DamBreakSetup:
    """A frictionless or frictional dam break on a flat bed, still water on both sides."""

    h_left: float
    h_right: float = 0.0
    dam_position: float = 5.0
    length: float = 10.0
    friction: FrictionLaw = FrictionLaw()
    gravity: float = GRAVITY
    dry_tolerance: float = DRY_TOLERANCE

    def __post_init__(self) -> None:
        if not self.h_left > 0:
            raise DomainError("The reservoir depth must be positive")
        if self.h_right < 0:
            raise DomainError("The downstream depth must be non-negative")
        if not self.h_left > self.h_right:
            raise DomainError("The reservoir must be deeper than the downstream water")
        if not 0 < self.dam_position < self.length:
            raise DomainError("The dam must lie inside the channel")

    @property
    def spec(self) -> ChannelSpec:
        return ChannelSpec(
            length=self.length,
            gravity=self.gravity,
            friction=self.friction,
            dry_tolerance=self.dry_tolerance,
        )

    @property
    def celerity(self) -> float:
        return math.sqrt(self.gravity * self.h_left)


def dam_break_initial(setup: DamBreakSetup, x: ArrayLike) -> State:
    """Initial step: h_left up to the dam (inclusive), h_right beyond, no velocity."""
    positions = np.asarray(x, dtype=float)
    h = np.where(positions <= setup.dam_position, setup.h_left, setup.h_right)
    return h, np.zeros_like(h)


def ritter(setup: DamBreakSetup, x: ArrayLike, t: float) -> State:
    """
    Frictionless dam break onto a dry bed.

    A rarefaction fan joins the reservoir at x0 - c t to the dry front at x0 + 2 c t,
    where h = (2c - (x - x0)/t)^2 / (9g) and u = 2/3 ((x - x0)/t + c).

    :raises DomainError: for t <= 0, a wet downstream bed or a frictional bed
    """
    _check_time(t)
    if setup.h_right != 0:
        raise DomainError("Ritter's solution needs a dry downstream bed")
    if not setup.friction.is_frictionless:
        raise DomainError("Ritter's solution is frictionless")
    c = setup.celerity
    xi = (np.asarray(x, dtype=float) - setup.dam_position) / t
    reservoir = xi <= -c
    dry = xi >= 2.0 * c
    fan = (2.0 * c - xi) ** 2 / (9.0 * setup.gravity)
    h = np.where(reservoir, setup.h_left, np.where(dry, 0.0, fan))
    u = np.where(reservoir | dry | (h < setup.dry_tolerance), 0.0, 2.0 / 3.0 * (xi + c))
    return h, u


@dataclasses.dataclass(frozen=True)
class StokerState:
    """Intermediate plateau of a wet-bed dam break and the speed of its shock."""

    depth: float
    velocity: float
    shock_speed: float
    residual: float

    def rankine_hugoniot_defect(self, setup: DamBreakSetup) -> float:
        """Largest relative defect of the mass and momentum jump conditions."""
        g = setup.gravity
        h_m, u_m, s, h_r = self.depth, self.velocity, self.shock_speed, setup.h_right
        mass = abs(s * (h_m - h_r) - h_m * u_m) / (h_m * u_m)
        momentum_flux = h_m * u_m * u_m + 0.5 * g * (h_m * h_m - h_r * h_r)
        momentum = abs(s * h_m * u_m - momentum_flux) / momentum_flux
        return max(mass, momentum)


def stoker_state(setup: DamBreakSetup) -> StokerState:
    """
    Plateau depth from the compatibility of the rarefaction and the shock.

    Solves 2(c_l - c_m) = (h_m - h_r) sqrt(g (h_m + h_r) / (2 h_m h_r)) for h_m in
    (h_r, h_l) with Brent's method.

    :raises DomainError: for a dry downstream bed
    :raises RootFindingError: if the root finder fails
    """
    if not setup.h_right > 0:
        raise DomainError("Stoker's solution needs a wet downstream bed")
    g, h_l, h_r = setup.gravity, setup.h_left, setup.h_right
    c_l = setup.celerity
    trace: List[float] = []

    def compatibility(h_m: float) -> float:
        value = 2.0 * (c_l - math.sqrt(g * h_m)) - (h_m - h_r) * math.sqrt(
            g * (h_m + h_r) / (2.0 * h_m * h_r)
        )
        trace.append(value)
        return value

    try:
        h_m, result = optimize.brentq(
            compatibility, h_r, h_l, xtol=ROOT_TOLERANCE, maxiter=200, full_output=True
        )
    except (ValueError, RuntimeError) as ex:
        raise RootFindingError(f"Stoker plateau depth did not converge: {ex}", trace) from ex
    if not result.converged:
        raise RootFindingError("Stoker plateau depth did not converge", trace)
    u_m = 2.0 * (c_l - math.sqrt(g * h_m))
    return StokerState(
        depth=h_m,
        velocity=u_m,
        shock_speed=h_m * u_m / (h_m - h_r),
        residual=abs(compatibility(h_m)),
    )


def stoker(setup: DamBreakSetup, x: ArrayLike, t: float) -> State:
    """
    Frictionless dam break onto still water.

    Reservoir, rarefaction fan down to u_m - c_m, plateau (h_m, u_m) up to the shock at
    x0 + s t, then the undisturbed downstream state.

    :raises DomainError: for t <= 0, a dry downstream bed or a frictional bed
    """
    _check_time(t)
    if not setup.friction.is_frictionless:
        raise DomainError("Stoker's solution is frictionless")
    state = stoker_state(setup)
    c_l = setup.celerity
    c_m = math.sqrt(setup.gravity * state.depth)
    xi = (np.asarray(x, dtype=float) - setup.dam_position) / t
    reservoir = xi <= -c_l
    fan = ~reservoir & (xi <= state.velocity - c_m)
    plateau = ~reservoir & ~fan & (xi <= state.shock_speed)
    h = np.full(xi.shape, setup.h_right)
    u = np.zeros(xi.shape)
    h[reservoir] = setup.h_left
    h[fan] = (2.0 * c_l - xi[fan]) ** 2 / (9.0 * setup.gravity)
    u[fan] = 2.0 / 3.0 * (xi[fan] + c_l)
    h[plateau] = state.depth
    u[plateau] = state.velocity
    return h, u


_ROOT3 = math.sqrt(3.0)


def _velocity_correction(s: np.ndarray) -> np.ndarray:
    return 12.0 / s - 8.0 / 3.0 + 8.0 * _ROOT3 / 189.0 * s**1.5 - 108.0 / (7.0 * s * s)


def _velocity_correction_slope(s: np.ndarray) -> np.ndarray:
    return -12.0 / (s * s) + 4.0 * _ROOT3 / 63.0 * np.sqrt(s) + 216.0 / (7.0 * s**3)


def _celerity_correction(s: np.ndarray) -> np.ndarray:
    return 6.0 / (5.0 * s) - 2.0 / 3.0 + 4.0 * _ROOT3 / 135.0 * s**1.5


def _resistance(setup: DamBreakSetup) -> float:
    family = setup.friction.family
    supported = (FrictionFamily.NONE, FrictionFamily.CHEZY, FrictionFamily.DARCY_WEISBACH)
    if family not in supported:
        raise DomainError(f"Dressler's solution does not support {family.value} friction")
    return setup.friction.cf(setup.gravity)


@dataclasses.dataclass(frozen=True)
class DresslerTip:
    """Resistance-dominated tip: from ``position`` to ``front`` the velocity is constant."""

    position: float
    front: float
    velocity: float
    depth: float


def dressler_tip(setup: DamBreakSetup, t: float) -> DresslerTip:
    """
    Start and end of the wave tip of a dam break with Chezy friction.

    The tip starts where the friction-corrected velocity peaks. Beyond it the velocity is
    held at its peak and the depth follows the friction balance h h' = -C_f u^2, so
    h^2 = h_tip^2 - 2 C_f u_tip^2 (x - x_tip). The front is clamped to the frictionless
    front x0 + 2 c t.
    """
    _check_time(t)
    cf = _resistance(setup)
    c = setup.celerity
    g = setup.gravity
    ritter_front = setup.dam_position + 2.0 * c * t
    if cf == 0:
        return DresslerTip(ritter_front, ritter_front, 2.0 * c, 0.0)
    strength = g * g * cf * t

    def peak_condition(s: float) -> float:
        return strength * float(_velocity_correction_slope(np.asarray(s))) - 2.0 * c / 3.0

    lower = 1e-9
    if peak_condition(lower) <= 0:
        s_tip = lower
    else:
        s_tip = optimize.brentq(peak_condition, lower, 3.0, xtol=1e-14)
    xi = 2.0 - s_tip
    s_arr = np.asarray(s_tip)
    velocity = 2.0 / 3.0 * c * (1.0 + xi) + strength * float(_velocity_correction(s_arr))
    celerity = c * s_tip / 3.0 + strength * float(_celerity_correction(s_arr))
    depth = celerity * celerity / g
    position = setup.dam_position + xi * c * t
    front = position + depth * depth / (2.0 * cf * velocity * velocity)
    return DresslerTip(position, min(front, ritter_front), velocity, depth)


def dressler(setup: DamBreakSetup, x: ArrayLike, t: float) -> State:
    """
    First order friction correction of Ritter's solution.

    With s = 2 - (x - x0)/(c t) and r = g^2 C_f, the fan carries
    u = 2/3 (c + (x - x0)/t) + r t a_u(s) and sqrt(gh) = c s / 3 + r t a_c(s). The wave tip
    is described by :func:`dressler_tip`. Without friction this is Ritter's solution.

    :raises DomainError: for t <= 0, a wet downstream bed or Manning friction
    """
    _check_time(t)
    if setup.h_right != 0:
        raise DomainError("Dressler's solution needs a dry downstream bed")
    cf = _resistance(setup)
    if cf == 0:
        return ritter(setup, x, t)
    g = setup.gravity
    c = setup.celerity
    positions = np.asarray(x, dtype=float)
    xi = (positions - setup.dam_position) / (c * t)
    tip = dressler_tip(setup, t)
    strength = g * g * cf * t

    reservoir = xi <= -1.0
    fan = ~reservoir & (positions < tip.position)
    in_tip = ~reservoir & ~fan & (positions < tip.front)
    h = np.where(reservoir, setup.h_left, 0.0)
    u = np.zeros(positions.shape)
    s = 2.0 - xi[fan]
    u[fan] = 2.0 / 3.0 * c * (1.0 + xi[fan]) + strength * _velocity_correction(s)
    h[fan] = (c * s / 3.0 + strength * _celerity_correction(s)) ** 2 / g
    squared = tip.depth**2 - 2.0 * cf * tip.velocity**2 * (positions[in_tip] - tip.position)
    h[in_tip] = np.sqrt(np.maximum(squared, 0.0))
    u[in_tip] = tip.velocity
    u[h < setup.dry_tolerance] = 0.0
    return h, u


class ThackerVariant(enum.Enum):
    """Free surface shape of an oscillation in a paraboloid basin."""

    PLANAR = "planar"
    CURVED = "curved"


@dataclasses.dataclass(frozen=True)
class ThackerSetup:
    """
    Periodic frictionless oscillation in the basin z = h0 (r^2 / a^2 - 1).

    The basin is centred in [0, L] (and [0, L]^2 in 2D). ``amplitude`` is the shoreline
    excursion for the planar surface and the dimensionless A in [0, 1) for the curved one.
    """

    radius: float = 1.0
    depth: float = 0.5
    amplitude: float = 0.5
    variant: ThackerVariant = ThackerVariant.PLANAR
    dimension: int = 1
    length: float = 4.0
    gravity: float = GRAVITY
    dry_tolerance: float = DRY_TOLERANCE

    def __post_init__(self) -> None:
        if not (self.radius > 0 and self.depth > 0 and self.length > 0):
            raise DomainError("Basin radius, depth and domain length must be positive")
        if self.dimension not in (1, 2):
            raise DomainError("Basin oscillations are one or two dimensional")
        if self.variant is ThackerVariant.CURVED:
            if self.dimension != 2:
                raise DomainError("The curved surface oscillation is two dimensional")
            if not 0 <= self.amplitude < 1:
                raise DomainError("The curved surface amplitude must lie in [0, 1)")
        if self.max_shoreline > 0.5 * self.length:
            raise DomainError(
                f"The shoreline reaches {self.max_shoreline} from the centre, "
                f"beyond the domain half width {0.5 * self.length}"
            )

    @property
    def omega(self) -> float:
        base = math.sqrt(2.0 * self.gravity * self.depth) / self.radius
        return 2.0 * base if self.variant is ThackerVariant.CURVED else base

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega

    @property
    def max_shoreline(self) -> float:
        """Largest distance of the shoreline from the basin centre."""
        if self.variant is ThackerVariant.CURVED:
            a = self.amplitude
            return self.radius * ((1.0 + a) / (1.0 - a)) ** 0.25
        return self.radius + abs(self.amplitude)

    @property
    def spec(self) -> ChannelSpec:
        return ChannelSpec(
            length=self.length,
            gravity=self.gravity,
            dry_tolerance=self.dry_tolerance,
            width=self.length if self.dimension == 2 else None,
        )

    def topography(self, x: ArrayLike, y: Optional[ArrayLike] = None) -> np.ndarray:
        r2 = (np.asarray(x, dtype=float) - 0.5 * self.length) ** 2
        if y is not None:
            r2 = r2 + (np.asarray(y, dtype=float) - 0.5 * self.length) ** 2
        return self.depth * (r2 / self.radius**2 - 1.0)

    def paraboloid(self, t: float) -> Tuple[float, float, float, float]:
        """
        Wet depth as A0 - B0 |p - c|^2 clipped at zero.

        :return: (A0, B0, cx, cy) with the centre c relative to the domain origin
        """
        centre = 0.5 * self.length
        phase = self.omega * t
        if self.variant is ThackerVariant.CURVED:
            a2 = self.amplitude**2
            kappa = 1.0 - self.amplitude * math.cos(phase)
            return (
                self.depth * math.sqrt(1.0 - a2) / kappa,
                self.depth * (1.0 - a2) / (self.radius**2 * kappa**2),
                centre,
                centre,
            )
        shift = self.amplitude
        return (
            self.depth,
            self.depth / self.radius**2,
            centre + shift * math.cos(phase),
            centre + (shift * math.sin(phase) if self.dimension == 2 else 0.0),
        )


def thacker(
    setup: ThackerSetup, x: ArrayLike, t: float, y: Optional[ArrayLike] = None
) -> State:
    """
    Point values of the basin oscillation.

    Planar: h = (h0/a^2)(a^2 - |p - eta (cos wt, sin wt)|^2), uniform velocity
    (-eta w sin wt, eta w cos wt); in 1D only the x components. Curved: with
    k = 1 - A cos wt, h = h0 (sqrt(1 - A^2)/k - (1 - A^2) r^2 / (a^2 k^2)) and a radial
    velocity w A sin(wt) r / (2k).

    :param y: y coordinates, broadcast against x, required in 2D
    :raises DomainError: if y is missing for a 2D setup or given for a 1D one
    """
    if (setup.dimension == 2) != (y is not None):
        raise DomainError("y coordinates must be given exactly for 2D basins")
    xs = np.asarray(x, dtype=float)
    a0, b0, cx, cy = setup.paraboloid(t)
    rho2 = (xs - cx) ** 2
    if y is not None:
        ys = np.asarray(y, dtype=float)
        rho2 = rho2 + (ys - cy) ** 2
    h = np.maximum(a0 - b0 * rho2, 0.0)
    wet = h >= setup.dry_tolerance
    phase = setup.omega * t
    centre = 0.5 * setup.length
    if setup.variant is ThackerVariant.CURVED:
        kappa = 1.0 - setup.amplitude * math.cos(phase)
        rate = setup.omega * setup.amplitude * math.sin(phase) / (2.0 * kappa)
        u = np.where(wet, rate * (xs - centre), 0.0)
        v = np.where(wet, rate * (np.asarray(y, dtype=float) - centre), 0.0)
        return h, u, v
    speed = setup.amplitude * setup.omega
    u = np.where(wet, -speed * math.sin(phase), 0.0)
    if y is None:
        return h, u
    v = np.where(wet, speed * math.cos(phase), 0.0)
    return h, u, v


def _segment_average(
    lo: np.ndarray, hi: np.ndarray, a0: float, b0: float, c: float
) -> np.ndarray:
    """Exact integral of max(a0 - b0 (x - c)^2, 0) over [lo, hi]."""
    reach = math.sqrt(a0 / b0)
    left = np.maximum(lo, c - reach)
    right = np.minimum(hi, c + reach)
    integral = a0 * (right - left) - b0 * ((right - c) ** 3 - (left - c) ** 3) / 3.0
    return np.where(right > left, integral, 0.0)


def _primitive_cubed_root(s: float, r: float) -> float:
    """Antiderivative of (r^2 - s^2)^(3/2)."""
    s = min(max(s, -r), r)
    root = math.sqrt(max(r * r - s * s, 0.0))
    return s * (5.0 * r * r - 2.0 * s * s) * root / 8.0 + 3.0 * r**4 / 8.0 * math.asin(s / r)


def _disk_cell_integral(
    x0: float, x1: float, y0: float, y1: float, a0: float, b0: float, cx: float, cy: float
) -> float:
    """
    Exact integral of max(a0 - b0 rho^2, 0) over a rectangle cut by the wet disk.

    The inner y integral is closed form; the x range is split where the circle crosses
    the rectangle so that each piece integrates in closed form too.
    """
    r = math.sqrt(a0 / b0)
    s0, s1 = max(x0 - cx, -r), min(x1 - cx, r)
    if s1 <= s0:
        return 0.0
    lo_y, hi_y = y0 - cy, y1 - cy
    breaks = {s0, s1}
    for edge in (lo_y, hi_y):
        if abs(edge) < r:
            crossing = math.sqrt(r * r - edge * edge)
            breaks.update(p for p in (-crossing, crossing) if s0 < p < s1)
    points = sorted(breaks)
    total = 0.0
    for sa, sb in zip(points, points[1:]):
        mid = 0.5 * (sa + sb)
        half_chord = math.sqrt(max(r * r - mid * mid, 0.0))
        top_is_circle = half_chord < hi_y
        bottom_is_circle = -half_chord > lo_y
        top = half_chord if top_is_circle else hi_y
        bottom = -half_chord if bottom_is_circle else lo_y
        if top <= bottom:
            continue
        piece = 0.0
        # integral of G(Y) = D^2 Y - Y^3 / 3, D^2 = r^2 - s^2, at Y = top minus Y = bottom
        ends = ((top_is_circle, hi_y, 1.0), (bottom_is_circle, lo_y, -1.0))
        for is_circle, value, sign in ends:
            if is_circle:
                piece += (
                    sign
                    * sign
                    * 2.0
                    / 3.0
                    * (_primitive_cubed_root(sb, r) - _primitive_cubed_root(sa, r))
                )
            else:
                poly = value * (r * r * (sb - sa) - (sb**3 - sa**3) / 3.0)
                piece += sign * (poly - value**3 * (sb - sa) / 3.0)
        total += b0 * piece
    return total


def thacker_cell_averages(setup: ThackerSetup, grid: Grid, t: float) -> np.ndarray:
    """
    Exact cell averages of the basin depth.

    Discrete wet volume is then exactly the analytic volume up to rounding.
    """
    a0, b0, cx, cy = setup.paraboloid(t)
    edges_x = grid.faces
    if not grid.is_2d:
        return _segment_average(edges_x[:-1], edges_x[1:], a0, b0, cx) / grid.dx
    edges_y = grid.origin_y + np.arange(grid.shape[0] + 1) * grid.dy
    r = math.sqrt(a0 / b0)
    xl, yl = np.meshgrid(edges_x[:-1], edges_y[:-1])
    xr, yr = np.meshgrid(edges_x[1:], edges_y[1:])
    far_x = np.maximum(np.abs(xl - cx), np.abs(xr - cx))
    far_y = np.maximum(np.abs(yl - cy), np.abs(yr - cy))
    near_x = np.where((xl <= cx) & (cx <= xr), 0.0, np.minimum(np.abs(xl - cx), far_x))
    near_y = np.where((yl <= cy) & (cy <= yr), 0.0, np.minimum(np.abs(yl - cy), far_y))
    inside = far_x**2 + far_y**2 <= r * r
    outside = near_x**2 + near_y**2 >= r * r

    def mean_square(lo: np.ndarray, hi: np.ndarray, c: float) -> np.ndarray:
        return ((hi - c) ** 3 - (lo - c) ** 3) / (3.0 * (hi - lo))

    averages = np.where(
        inside, a0 - b0 * (mean_square(xl, xr, cx) + mean_square(yl, yr, cy)), 0.0
    )
    area = grid.dx * grid.dy
    for j, i in zip(*np.nonzero(~inside & ~outside)):
        averages[j, i] = (
            _disk_cell_integral(xl[j, i], xr[j, i], yl[j, i], yr[j, i], a0, b0, cx, cy) / area
        )
    return averages


def sample_thacker(
    setup: ThackerSetup,
    n_cells: int,
    t: float,
    n_cells_y: Optional[int] = None,
    cell_average: bool = False,
) -> SolutionProfile:
    """
    Discretize the basin oscillation on a uniform grid of the domain.

    Depths are point values at cell centres, or exact cell averages with ``cell_average``.
    Velocities are point values at cell centres.
    """
    if setup.dimension == 2:
        grid = Grid(n_cells, setup.length, n_cells_y=n_cells_y or n_cells, width=setup.length)
        xs, ys = np.meshgrid(grid.x, grid.y)
        h, u, v = thacker(setup, xs, t, ys)
        z = setup.topography(xs, ys)
    else:
        grid = Grid(n_cells, setup.length)
        h, u = thacker(setup, grid.x, t)
        v = None
        z = setup.topography(grid.x)
    if cell_average:
        h = thacker_cell_averages(setup, grid, t)
        dry = h < setup.dry_tolerance
        u = np.where(dry, 0.0, u)
        v = None if v is None else np.where(dry, 0.0, v)
    return SolutionProfile(
        grid=grid,
        h=h,
        u=u,
        z=z,
        time=t,
        v=v,
        metadata={"period": setup.period, "cell_average": cell_average},
        dry_tolerance=setup.dry_tolerance,
    )


class TransientSolution(abc.ABC):
    """A closed-form time dependent solution with known non-smooth features."""

    @property
    @abc.abstractmethod
    def spec(self) -> ChannelSpec:
        raise NotImplementedError  # pragma: no cover

    @property
    def dimension(self) -> int:
        return 1

    @abc.abstractmethod
    def evaluate(self, x: ArrayLike, t: float, y: Optional[ArrayLike] = None) -> State:
        """Depth and velocity components at points."""
        raise NotImplementedError  # pragma: no cover

    @abc.abstractmethod
    def initial(self, x: ArrayLike, y: Optional[ArrayLike] = None) -> State:
        """Initial condition at points."""
        raise NotImplementedError  # pragma: no cover

    @abc.abstractmethod
    def topography(self, x: ArrayLike, y: Optional[ArrayLike] = None) -> np.ndarray:
        raise NotImplementedError  # pragma: no cover

    @abc.abstractmethod
    def smooth(
        self, x: ArrayLike, t: float, margin: float, y: Optional[ArrayLike] = None
    ) -> np.ndarray:
        """
        Points further than ``margin`` from every kink, shock or shoreline at time t.

        :param margin: exclusion distance around non-smooth features
        """
        raise NotImplementedError  # pragma: no cover

    def rankine_hugoniot_defect(self) -> Optional[float]:
        """Jump condition defect for solutions with shocks."""
        return None


def _away_from(x: ArrayLike, features: Sequence[float], margin: float) -> np.ndarray:
    positions = np.asarray(x, dtype=float)
    mask = np.ones(positions.shape, dtype=bool)
    for feature in features:
        mask &= np.abs(positions - feature) > margin
    return mask


class _DamBreakSolution(TransientSolution):
    def __init__(self, setup: DamBreakSetup) -> None:
        self._setup = setup

    @property
    def setup(self) -> DamBreakSetup:
        return self._setup

    @property
    def spec(self) -> ChannelSpec:
        return self._setup.spec

    def initial(self, x: ArrayLike, y: Optional[ArrayLike] = None) -> State:
        return dam_break_initial(self._setup, x)

    def topography(self, x: ArrayLike, y: Optional[ArrayLike] = None) -> np.ndarray:
        return np.zeros(np.shape(x))

    @abc.abstractmethod
    def features(self, t: float) -> List[float]:
        raise NotImplementedError  # pragma: no cover

    def smooth(
        self, x: ArrayLike, t: float, margin: float, y: Optional[ArrayLike] = None
    ) -> np.ndarray:
        return _away_from(x, self.features(t), margin)


class RitterSolution(_DamBreakSolution):
    """Ritter's dry-bed dam break."""

    def evaluate(self, x: ArrayLike, t: float, y: Optional[ArrayLike] = None) -> State:
        return ritter(self._setup, x, t)

    def features(self, t: float) -> List[float]:
        c, x0 = self._setup.celerity, self._setup.dam_position
        return [x0 - c * t, x0 + 2.0 * c * t]


class StokerSolution(_DamBreakSolution):
    """Stoker's wet-bed dam break."""

    def __init__(self, setup: DamBreakSetup) -> None:
        super().__init__(setup)
        self._state = stoker_state(setup)

    @property
    def state(self) -> StokerState:
        return self._state

    def evaluate(self, x: ArrayLike, t: float, y: Optional[ArrayLike] = None) -> State:
        return stoker(self._setup, x, t)

    def features(self, t: float) -> List[float]:
        c_l, x0 = self._setup.celerity, self._setup.dam_position
        c_m = math.sqrt(self._setup.gravity * self._state.depth)
        return [
            x0 - c_l * t,
            x0 + (self._state.velocity - c_m) * t,
            x0 + self._state.shock_speed * t,
        ]

    def rankine_hugoniot_defect(self) -> Optional[float]:
        return self._state.rankine_hugoniot_defect(self._setup)


class DresslerSolution(_DamBreakSolution):
    """Dressler's frictional dam break."""

    def evaluate(self, x: ArrayLike, t: float, y: Optional[ArrayLike] = None) -> State:
        return dressler(self._setup, x, t)

    def features(self, t: float) -> List[float]:
        tip = dressler_tip(self._setup, t)
        return [self._setup.dam_position - self._setup.celerity * t, tip.position, tip.front]


class ThackerSolution(TransientSolution):
    """Oscillation in a paraboloid basin."""

    def __init__(self, setup: ThackerSetup) -> None:
        self._setup = setup

    @property
    def setup(self) -> ThackerSetup:
        return self._setup

    @property
    def spec(self) -> ChannelSpec:
        return self._setup.spec

    @property
    def dimension(self) -> int:
        return self._setup.dimension

    def evaluate(self, x: ArrayLike, t: float, y: Optional[ArrayLike] = None) -> State:
        return thacker(self._setup, x, t, y)

    def initial(self, x: ArrayLike, y: Optional[ArrayLike] = None) -> State:
        return thacker(self._setup, x, 0.0, y)

    def topography(self, x: ArrayLike, y: Optional[ArrayLike] = None) -> np.ndarray:
        return self._setup.topography(x, y)

    def smooth(
        self, x: ArrayLike, t: float, margin: float, y: Optional[ArrayLike] = None
    ) -> np.ndarray:
        a0, b0, cx, cy = self._setup.paraboloid(t)
        rho2 = (np.asarray(x, dtype=float) - cx) ** 2
        if y is not None:
            rho2 = rho2 + (np.asarray(y, dtype=float) - cy) ** 2
        return np.abs(np.sqrt(rho2) - math.sqrt(a0 / b0)) > margin


@dataclasses.dataclass(frozen=True)
class TransientResidual:
    """Max-norm defects of the conservation laws over the smooth part of a lattice."""

    mass: float
    momentum: float
    momentum_y: Optional[float]
    checked_points: int
    rankine_hugoniot: Optional[float]


def _erode(mask: np.ndarray, radius: int) -> np.ndarray:
    result = mask.copy()
    for axis in range(mask.ndim):
        moved = np.moveaxis(result, axis, -1)
        source = np.moveaxis(mask, axis, -1)
        for shift in range(1, radius + 1):
            moved[..., shift:] &= source[..., :-shift]
            moved[..., :-shift] &= source[..., shift:]
            moved[..., :shift] = False
            moved[..., -shift:] = False
    return result


def _uniform_spacing(values: np.ndarray, name: str) -> float:
    if values.ndim != 1 or len(values) < 5:
        raise StencilError(f"The {name} lattice needs at least 5 points")
    steps = np.diff(values)
    if np.any(steps <= 0) or np.ptp(steps) > 1e-9 * abs(float(steps[0])):
        raise DomainError(f"The {name} lattice must be uniform and increasing")
    return float(steps[0])


def transient_residual(
    solution: TransientSolution,
    x: ArrayLike,
    t: ArrayLike,
    y: Optional[ArrayLike] = None,
    buffer: int = 4,
) -> TransientResidual:
    """
    Fourth order finite difference defect of mass and momentum conservation.

    The solution is sampled on the space-time lattice; lattice points within ``buffer``
    cells (plus the stencil half width) of a kink, shock or shoreline, or whose stencil
    touches a dry point, are excluded.

    :raises StencilError: if a lattice direction has fewer than 5 points
    """
    xs = np.asarray(x, dtype=float)
    ts = np.asarray(t, dtype=float)
    dx = _uniform_spacing(xs, "x")
    dt = _uniform_spacing(ts, "time")
    spec = solution.spec
    g = spec.gravity
    two_d = y is not None
    if two_d:
        ys = np.asarray(y, dtype=float)
        dy = _uniform_spacing(ys, "y")
        px, py = np.meshgrid(xs, ys)
        margin = (2 + buffer) * math.hypot(dx, dy)
    else:
        px, py = xs, None
        dy = 0.0
        margin = (2 + buffer) * dx

    states = [solution.evaluate(px, float(tk), py) for tk in ts]
    h = np.stack([state[0] for state in states])
    u = np.stack([state[1] for state in states])
    smooth = np.stack([solution.smooth(px, float(tk), margin, py) for tk in ts])
    z = solution.topography(px, py)
    mask = _erode(smooth & (h > spec.dry_tolerance), 2)

    x_axis = 2 if two_d else 1
    hu = h * u
    mass = fourth_order_central(h, dt, 0) + fourth_order_central(hu, dx, x_axis)
    momentum = (
        fourth_order_central(hu, dt, 0)
        + fourth_order_central(hu * u + 0.5 * g * h * h, dx, x_axis)
        + g * h * fourth_order_central(z, dx, x_axis - 1)
    )
    if not spec.friction.is_frictionless:
        wet = h > spec.dry_tolerance
        sf = np.zeros_like(h)
        sf[wet] = friction_slope(spec.friction, h[wet], hu[wet], g, spec.dry_tolerance)
        momentum = momentum + g * h * sf
    momentum_y: Optional[np.ndarray] = None
    if two_d:
        v = np.stack([state[2] for state in states])
        hv = h * v
        mass = mass + fourth_order_central(hv, dy, 1)
        momentum = momentum + fourth_order_central(hu * v, dy, 1)
        momentum_y = (
            fourth_order_central(hv, dt, 0)
            + fourth_order_central(hu * v, dx, 2)
            + fourth_order_central(hv * v + 0.5 * g * h * h, dy, 1)
            + g * h * fourth_order_central(z, dy, 0)
        )
    mass = mass - spec.rain_rate

    def worst(defect: np.ndarray) -> float:
        checked = mask & np.isfinite(defect)
        return float(np.max(np.abs(defect[checked]))) if np.any(checked) else 0.0

    return TransientResidual(
        mass=worst(mass),
        momentum=worst(momentum),
        momentum_y=None if momentum_y is None else worst(momentum_y),
        checked_points=int(mask.sum()),
        rankine_hugoniot=solution.rankine_hugoniot_defect(),
    )
