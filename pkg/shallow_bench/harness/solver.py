# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

"""Reference first order finite volume solver: Rusanov flux with hydrostatic reconstruction."""

import dataclasses
import enum
import math
from typing import Any, Dict, Optional, Tuple

import numpy as np

from shallow_bench import logger
from shallow_bench.definitions import (
    Boundary,
    BoundaryKind,
    ChannelSpec,
    FlowRegime,
    FrictionFamily,
    SolutionProfile,
)
from shallow_bench.exceptions import (
    DomainError,
    HarnessError,
    NumericalFailure,
    StabilityError,
)
from shallow_bench.harness.interfaces import Solver
from shallow_bench.hydraulics import classify_regime, required_boundary_values

DEFAULT_MAX_STEPS = 1_000_000

THIN_LAYER = 1e-6
""" Depth below which cells are left out of the post-step Courant check. """


class FluxKind(enum.Enum):
    """Numerical flux."""

    RUSANOV = "rusanov"


class TopographyTreatment(enum.Enum):
    """Discretization of the bed slope source."""

    HYDROSTATIC = "hydrostatic"
    NAIVE = "naive"


@dataclasses.dataclass(frozen=True)
class SchemeConfig:
    """
    Options of the reference scheme.

    ``left`` and ``right`` override the boundary conditions a case provides.
    """

    flux: FluxKind = FluxKind.RUSANOV
    topography: TopographyTreatment = TopographyTreatment.HYDROSTATIC
    cfl: float = 0.5
    left: Optional[Boundary] = None
    right: Optional[Boundary] = None
    max_steps: Optional[int] = None

    def __post_init__(self) -> None:
        if not 0 < self.cfl <= 1:
            raise DomainError(f"The Courant number must lie in (0, 1], got {self.cfl}")
        if self.max_steps is not None and self.max_steps < 1:
            raise DomainError("The step cap must be at least one")

    def to_dict(self) -> Dict[str, Any]:
        def boundary(value: Optional[Boundary]) -> Optional[Dict[str, Any]]:
            if value is None:
                return None
            return {
                "kind": value.kind.value,
                "depth": value.depth,
                "discharge": value.discharge,
            }

        return {
            "flux": self.flux.value,
            "topography": self.topography.value,
            "cfl": self.cfl,
            "left": boundary(self.left),
            "right": boundary(self.right),
            "max_steps": self.max_steps,
        }


def boundary_for_regime(profile: SolutionProfile, spec: ChannelSpec, left: bool) -> Boundary:
    """
    Boundary condition imposing the values a well-posed end needs, taken from a profile.

    Subcritical inflow imposes q, subcritical outflow h, supercritical inflow both and
    supercritical outflow nothing.

    :param profile: the state whose end values are imposed
    :param spec: the physical setting
    :param left: the upstream (x = 0) end when true
    """
    index = 0 if left else -1
    h = float(profile.h.reshape(-1)[index])
    q = float(profile.discharge.reshape(-1)[index])
    regime = classify_regime(h, q, spec)
    inflow = q > 0 if left else q < 0
    imposed = required_boundary_values(regime, inflow)
    if imposed == 2:
        return Boundary(BoundaryKind.STATE, depth=h, discharge=q)
    if imposed == 1 and regime is not FlowRegime.DRY:
        if inflow:
            return Boundary(BoundaryKind.DISCHARGE, discharge=q)
        return Boundary(BoundaryKind.DEPTH, depth=h)
    return Boundary(BoundaryKind.FREE)


def _ghost(
    boundary: Boundary, h: np.ndarray, q: np.ndarray, z: np.ndarray, left: bool
) -> Tuple[float, float, float]:
    inner = 0 if left else -1
    opposite = -1 if left else 0
    kind = boundary.kind
    if kind is BoundaryKind.PERIODIC:
        return float(h[opposite]), float(q[opposite]), float(z[opposite])
    h_in, q_in, z_in = float(h[inner]), float(q[inner]), float(z[inner])
    if kind is BoundaryKind.WALL:
        return h_in, -q_in, z_in
    if kind is BoundaryKind.DISCHARGE:
        return h_in, float(boundary.discharge or 0.0), z_in
    if kind is BoundaryKind.DEPTH:
        return float(boundary.depth or 0.0), q_in, z_in
    if kind is BoundaryKind.STATE:
        return float(boundary.depth or 0.0), float(boundary.discharge or 0.0), z_in
    return h_in, q_in, z_in


class FiniteVolumeSolver(Solver):
    """
    Explicit first order finite volume scheme for the 1D shallow water equations.

    Rusanov fluxes on either hydrostatically reconstructed or raw interface states, rain
    added explicitly to h and friction applied semi-implicitly after the flux update.
    """

    def __init__(self, scheme: SchemeConfig = SchemeConfig()) -> None:
        self._scheme = scheme

    @property
    def scheme(self) -> SchemeConfig:
        return self._scheme

    @property
    def name(self) -> str:
        return f"{self._scheme.flux.value}-{self._scheme.topography.value}"

    def _fluxes(
        self, h: np.ndarray, q: np.ndarray, z: np.ndarray, spec: ChannelSpec
    ) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Face fluxes of the extended state, with the one-sided depths and face speeds."""
        g, dry = spec.gravity, spec.dry_tolerance
        h_l, h_r = h[:-1], h[1:]
        u_ext = np.divide(q, h, out=np.zeros_like(h), where=h > dry)
        u_l, u_r = u_ext[:-1], u_ext[1:]
        if self._scheme.topography is TopographyTreatment.HYDROSTATIC:
            z_face = np.maximum(z[:-1], z[1:])
            h_l = np.maximum(0.0, h_l + z[:-1] - z_face)
            h_r = np.maximum(0.0, h_r + z[1:] - z_face)
        q_l, q_r = h_l * u_l, h_r * u_r
        speed = np.maximum(np.abs(u_l) + np.sqrt(g * h_l), np.abs(u_r) + np.sqrt(g * h_r))
        flux_h = 0.5 * (q_l + q_r) - 0.5 * speed * (h_r - h_l)
        flux_q = 0.5 * (q_l * u_l + 0.5 * g * h_l * h_l + q_r * u_r + 0.5 * g * h_r * h_r)
        flux_q = flux_q - 0.5 * speed * (q_r - q_l)
        return flux_h, flux_q, h_l, h_r, speed

    def _step(
        self,
        h: np.ndarray,
        q: np.ndarray,
        z: np.ndarray,
        spec: ChannelSpec,
        boundaries: Tuple[Boundary, Boundary],
        dt_cap: float,
        dx: float,
        step: int,
    ) -> Tuple[np.ndarray, np.ndarray, float]:
        g = spec.gravity
        left = _ghost(boundaries[0], h, q, z, left=True)
        right = _ghost(boundaries[1], h, q, z, left=False)
        h_ext = np.concatenate(([left[0]], h, [right[0]]))
        q_ext = np.concatenate(([left[1]], q, [right[1]]))
        z_ext = np.concatenate(([left[2]], z, [right[2]]))
        flux_h, flux_q, h_l, h_r, speed = self._fluxes(h_ext, q_ext, z_ext, spec)

        max_speed = float(np.max(speed))
        if max_speed <= 0:
            # fully dry
            dt = dt_cap if math.isfinite(dt_cap) else dx
        else:
            dt = min(dt_cap, self._scheme.cfl * dx / max_speed)
        ratio = dt / dx
        h_new = h - ratio * (flux_h[1:] - flux_h[:-1])
        if self._scheme.topography is TopographyTreatment.HYDROSTATIC:
            pressure_l = 0.5 * g * h_l * h_l
            pressure_r = 0.5 * g * h_r * h_r
            right_face = flux_q[1:] - pressure_l[1:]
            left_face = flux_q[:-1] - pressure_r[:-1]
            q_new = q - ratio * (right_face - left_face)
        else:
            q_new = q - ratio * (flux_q[1:] - flux_q[:-1])
            q_new = q_new - dt * g * h * (z_ext[2:] - z_ext[:-2]) / (2.0 * dx)
        if spec.rain_rate > 0:
            h_new = h_new + spec.rain_rate * dt

        bad = ~(np.isfinite(h_new) & np.isfinite(q_new))
        if np.any(bad):
            cell = int(np.argmax(bad))
            raise NumericalFailure(
                f"Non-finite state at step {step} in cell {cell}", step=step, cell=cell
            )
        negative = h_new < -spec.dry_tolerance
        if np.any(negative):
            cell = int(np.argmax(negative))
            raise StabilityError(
                f"Negative depth {h_new[cell]} at step {step} in cell {cell}",
                step=step,
                cell=cell,
            )
        h_new = np.maximum(h_new, 0.0)
        wet = h_new > spec.dry_tolerance
        q_new = np.where(wet, q_new, 0.0)
        if not spec.friction.is_frictionless:
            exponent = 7.0 / 3.0 if spec.friction.family is FrictionFamily.MANNING else 2.0
            damping = np.ones_like(h_new)
            damping[wet] += (
                dt * g * spec.friction.cf(g) * np.abs(q_new[wet]) / h_new[wet] ** exponent
            )
            q_new = q_new / damping

        new_speed = np.abs(np.divide(q_new, h_new, out=np.zeros_like(h_new), where=wet))
        new_speed = new_speed + np.sqrt(g * h_new)
        overrun = (new_speed * ratio > 1.0) & (h_new > THIN_LAYER)
        if np.any(overrun):
            cell = int(np.argmax(overrun))
            raise StabilityError(
                f"Courant number exceeded one at step {step} in cell {cell}",
                step=step,
                cell=cell,
            )
        return h_new, q_new, dt

    @staticmethod
    def _profile(
        initial: SolutionProfile,
        h: np.ndarray,
        q: np.ndarray,
        time: float,
        spec: ChannelSpec,
        metadata: Dict[str, Any],
    ) -> SolutionProfile:
        wet = h >= spec.dry_tolerance
        return SolutionProfile(
            grid=initial.grid,
            h=h,
            u=np.divide(q, h, out=np.zeros_like(h), where=wet),
            z=initial.z,
            time=time,
            q=np.where(wet, q, 0.0),
            metadata=metadata,
            dry_tolerance=spec.dry_tolerance,
        )

    @staticmethod
    def _check(initial: SolutionProfile) -> None:
        if initial.grid.is_2d:
            raise DomainError("The reference solver is one-dimensional")

    def run(
        self,
        initial: SolutionProfile,
        spec: ChannelSpec,
        t_end: float,
        boundaries: Tuple[Boundary, Boundary],
    ) -> SolutionProfile:
        self._check(initial)
        if t_end < initial.time:
            raise DomainError(f"Final time {t_end} is before the initial time {initial.time}")
        max_steps = self._scheme.max_steps or DEFAULT_MAX_STEPS
        h = initial.h.copy()
        q = initial.discharge.copy()
        z = initial.z
        dx = initial.grid.dx
        t = initial.time
        steps = 0
        logger.info("Starting solver run", solver=self.name, cells=len(h), t_end=t_end)
        while t < t_end:
            if steps >= max_steps:
                raise HarnessError(f"Step cap {max_steps} reached at t={t} before t={t_end}")
            remaining = t_end - t
            h, q, dt = self._step(h, q, z, spec, boundaries, remaining, dx, steps)
            steps += 1
            t = t_end if dt >= remaining else t + dt
        logger.info("Finished solver run", solver=self.name, steps=steps, time=t)
        return self._profile(initial, h, q, t, spec, {"steps": steps, "solver": self.name})

    def run_to_steady_state(
        self,
        initial: SolutionProfile,
        spec: ChannelSpec,
        boundaries: Tuple[Boundary, Boundary],
        threshold: float,
        max_steps: int,
    ) -> SolutionProfile:
        self._check(initial)
        if self._scheme.max_steps is not None:
            max_steps = min(max_steps, self._scheme.max_steps)
        h = initial.h.copy()
        q = initial.discharge.copy()
        z = initial.z
        dx = initial.grid.dx
        t = initial.time
        rate = math.inf
        steps = 0
        while steps < max_steps:
            h_new, q_new, dt = self._step(h, q, z, spec, boundaries, math.inf, dx, steps)
            steps += 1
            t += dt
            if dt > 0:
                rate = float(max(np.max(np.abs(h_new - h)), np.max(np.abs(q_new - q)))) / dt
            h, q = h_new, q_new
            if rate < threshold:
                break
        converged = rate < threshold
        if converged:
            logger.info("Reached steady state", solver=self.name, steps=steps, rate=rate)
        else:
            logger.warning(
                "Steady state not reached", solver=self.name, steps=steps, rate=rate
            )
        metadata = {"steps": steps, "converged": converged, "update_rate": rate}
        metadata["solver"] = self.name
        return self._profile(initial, h, q, t, spec, metadata)


def run_solver(
    initial: SolutionProfile,
    spec: ChannelSpec,
    scheme: SchemeConfig,
    t_end: float,
) -> SolutionProfile:
    """
    Advance a state with the reference scheme.

    Boundaries not set in ``scheme`` are derived from the initial end states.
    """
    boundaries = (
        scheme.left or boundary_for_regime(initial, spec, left=True),
        scheme.right or boundary_for_regime(initial, spec, left=False),
    )
    return FiniteVolumeSolver(scheme).run(initial, spec, t_end, boundaries)
