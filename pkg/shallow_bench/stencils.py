# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

"""Finite difference stencils used by the residual checks."""

import functools
from typing import Tuple

import numpy as np

from shallow_bench.exceptions import StencilError


@functools.lru_cache(maxsize=None)
def derivative_weights(offsets: Tuple[int, ...]) -> np.ndarray:
    """
    First derivative weights on the given integer offsets.

    Solves sum_j w_j s_j^k = delta_k1 for k below the number of points, which makes the
    stencil exact for polynomials of that degree.

    :param offsets: distinct stencil offsets in units of the grid spacing
    """
    points = np.asarray(offsets, dtype=float)
    rhs = np.zeros(len(points))
    rhs[1] = 1.0
    weights = np.linalg.solve(np.vander(points, increasing=True).T, rhs)
    weights.setflags(write=False)
    return weights


def _central(values: np.ndarray, spacing: float, order: int, axis: int) -> np.ndarray:
    """Antisymmetric central difference; exactly zero on constant data."""
    half = order // 2
    weights = derivative_weights(tuple(range(-half, half + 1)))
    moved = np.moveaxis(values, axis, -1)
    n = moved.shape[-1]
    result = np.full(moved.shape, np.nan)
    interior = np.zeros(moved[..., half : n - half].shape)
    for k in range(1, half + 1):
        interior += weights[half + k] * (
            moved[..., half + k : n - half + k] - moved[..., half - k : n - half - k]
        )
    result[..., half : n - half] = interior / spacing
    return np.moveaxis(result, -1, axis)


def sixth_order_derivative(values: np.ndarray, spacing: float) -> np.ndarray:
    """
    Sixth order first derivative along a 1D array.

    Central in the interior, 7-point one-sided at the three cells next to each end.

    :raises StencilError: with fewer than 8 points
    """
    n = len(values)
    if n < 8:
        raise StencilError(f"Sixth order stencils need at least 8 cells, got {n}")
    result = _central(values, spacing, 6, axis=0)
    for i in range(3):
        left = derivative_weights(tuple(range(-i, 7 - i)))
        result[i] = np.dot(left, values[0:7]) / spacing
        right = derivative_weights(tuple(range(i - 6, i + 1)))
        result[n - 1 - i] = np.dot(right, values[n - 7 : n]) / spacing
    return result


def fourth_order_central(values: np.ndarray, spacing: float, axis: int) -> np.ndarray:
    """
    Fourth order central first derivative along ``axis``.

    Points without a full stencil are NaN.

    :raises StencilError: with fewer than 5 points along the axis
    """
    if values.shape[axis] < 5:
        raise StencilError("Fourth order central stencils need at least 5 points")
    return _central(values, spacing, 4, axis)
