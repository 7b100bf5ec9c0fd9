# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

"""Pointwise diagnostics of the one-dimensional shallow-water equations."""

import math
from typing import Optional, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike

from shallow_bench.definitions import (
    DRY_TOLERANCE,
    GRAVITY,
    ChannelSpec,
    FlowRegime,
    FrictionLaw,
    SlopeClass,
)
from shallow_bench.exceptions import DomainError, DryStateError

CRITICAL_TOLERANCE = 1e-10
""" |Fr - 1| below which a state is classified critical. """

SLOPE_TOLERANCE = 1e-8
""" Relative distance between h_n and h_c below which a slope is critical. """

FloatOrArray = Union[float, np.ndarray]


def wave_speeds(h: ArrayLike, u: ArrayLike, g: float = GRAVITY) -> Tuple[FloatOrArray, ...]:
    """
    Eigenvalues of the flux Jacobian, u - sqrt(gh) and u + sqrt(gh).

    :param h: depth
    :param u: velocity
    :param g: gravitational acceleration
    :raises DomainError: on negative depth
    """
    depth = np.asarray(h, dtype=float)
    if np.any(depth < 0):
        raise DomainError("Wave speeds are undefined for negative depth")
    celerity = np.sqrt(g * depth)
    return np.asarray(u) - celerity, np.asarray(u) + celerity


def froude(
    h: float, u: float, g: float = GRAVITY, dry_tolerance: float = DRY_TOLERANCE
) -> float:
    """
    Froude number |u| / sqrt(gh).

    :raises DryStateError: if the state is dry
    """
    if h <= dry_tolerance:
        raise DryStateError(f"Froude number requested on a dry state (h={h})")
    return abs(u) / math.sqrt(g * h)


def froude_numbers(
    h: ArrayLike, u: ArrayLike, g: float = GRAVITY, dry_tolerance: float = DRY_TOLERANCE
) -> np.ndarray:
    """Vectorized Froude number, zero on dry cells."""
    depth = np.asarray(h, dtype=float)
    wet = depth > dry_tolerance
    result = np.zeros_like(depth)
    result[wet] = np.abs(np.asarray(u, dtype=float)[wet]) / np.sqrt(g * depth[wet])
    return result


def critical_height(q: float, g: float = GRAVITY) -> float:
    """Depth at which Fr = 1 for unit discharge q."""
    return (abs(q) / math.sqrt(g)) ** (2.0 / 3.0)


def friction_slope(
    law: FrictionLaw,
    h: ArrayLike,
    q: ArrayLike,
    g: float = GRAVITY,
    dry_tolerance: float = DRY_TOLERANCE,
) -> FloatOrArray:
    """
    Friction slope S_f, signed with the discharge.

    Manning: n^2 q|q| / h^(10/3). Darcy-Weisbach: f q|q| / (8 g h^3). Chezy: q|q| / (C^2 h^3).

    :raises DryStateError: if any depth is dry
    """
    depth = np.asarray(h, dtype=float)
    discharge = np.asarray(q, dtype=float)
    if law.is_frictionless:
        result = np.zeros(np.broadcast(depth, discharge).shape)
        return float(result) if result.ndim == 0 else result
    if np.any(depth <= dry_tolerance):
        raise DryStateError("Friction slope requested on a dry state")
    result = law.cf(g) * discharge * np.abs(discharge) / depth**law.depth_exponent
    return float(result) if np.ndim(result) == 0 else result


def normal_height(
    law: FrictionLaw, q: float, slope: float, g: float = GRAVITY
) -> Optional[float]:
    """
    Depth of uniform flow, where S_f(h_n) = S0.

    Both friction families admit a closed form. Returns ``None`` when no normal depth exists
    (horizontal or adverse bed, or no friction).

    :raises DomainError: if q is zero
    """
    if q == 0:
        raise DomainError("Normal depth is undefined for zero discharge")
    if slope <= 0 or law.is_frictionless:
        return None
    return (law.cf(g) * q * q / slope) ** (1.0 / law.depth_exponent)


def critical_slope(law: FrictionLaw, q: float, g: float = GRAVITY) -> float:
    """
    Bed slope at which normal and critical depth coincide.

    :raises DomainError: if q is zero or there is no friction
    """
    if q == 0:
        raise DomainError("Critical slope is undefined for zero discharge")
    if law.is_frictionless:
        raise DomainError("A channel without friction has no critical slope")
    return float(friction_slope(law, critical_height(q, g), abs(q), g))


def classify_regime(h: float, q: float, spec: ChannelSpec) -> FlowRegime:
    """Regime of a state from its Froude number."""
    if h < spec.dry_tolerance:
        return FlowRegime.DRY
    fr = abs(q) / (h * math.sqrt(spec.gravity * h))
    if abs(fr - 1.0) <= CRITICAL_TOLERANCE:
        return FlowRegime.CRITICAL
    return FlowRegime.SUBCRITICAL if fr < 1.0 else FlowRegime.SUPERCRITICAL


def classify_slope(law: FrictionLaw, q: float, slope: float, g: float = GRAVITY) -> SlopeClass:
    """
    Slope class from the ordering of normal and critical depth.

    :raises DomainError: if q is zero, or a positive slope has no friction to balance it
    """
    if q == 0:
        raise DomainError("Slope classification is undefined for zero discharge")
    if slope == 0:
        return SlopeClass.HORIZONTAL
    if slope < 0:
        return SlopeClass.ADVERSE
    hn = normal_height(law, q, slope, g)
    if hn is None:
        raise DomainError("A positive slope without friction has no normal depth")
    hc = critical_height(q, g)
    if abs(hn - hc) <= SLOPE_TOLERANCE * hc:
        return SlopeClass.CRITICAL
    return SlopeClass.MILD if hn > hc else SlopeClass.STEEP


def physical_flux(
    h: np.ndarray, q: np.ndarray, g: float = GRAVITY, dry_tolerance: float = DRY_TOLERANCE
) -> Tuple[np.ndarray, np.ndarray]:
    """Conservative flux (q, q^2/h + g h^2 / 2), with zero advection on dry cells."""
    wet = h > dry_tolerance
    advection = np.divide(q * q, h, out=np.zeros_like(h), where=wet)
    return q, advection + 0.5 * g * h * h


def jacobian(h: float, u: float, g: float = GRAVITY) -> np.ndarray:
    """Flux Jacobian [[0, 1], [gh - u^2, 2u]]."""
    return np.array([[0.0, 1.0], [g * h - u * u, 2.0 * u]])


def required_boundary_values(regime: FlowRegime, inflow: bool) -> int:
    """
    Number of values a well-posed boundary must impose.

    Subcritical boundaries take one, supercritical inflow takes two and supercritical
    outflow none.
    """
    if regime is FlowRegime.SUPERCRITICAL:
        return 2 if inflow else 0
    if regime is FlowRegime.DRY:
        return 0
    return 1
