# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

"""Smooth depth and topography families with analytic derivatives."""

import abc
import dataclasses
from typing import Callable, Optional

import numpy as np
from numpy.typing import ArrayLike

from shallow_bench.exceptions import DomainError

DERIVATIVE_CHECK_TOLERANCE = 1e-6
""" Relative tolerance of the finite difference derivative spot checks. """


class DepthAnsatz(abc.ABC):
    """A prescribed smooth depth h(x) with its first two derivatives."""

    @abc.abstractmethod
    def depth(self, x: ArrayLike) -> np.ndarray:
        raise NotImplementedError  # pragma: no cover

    @abc.abstractmethod
    def first_derivative(self, x: ArrayLike) -> np.ndarray:
        raise NotImplementedError  # pragma: no cover

    @abc.abstractmethod
    def second_derivative(self, x: ArrayLike) -> np.ndarray:
        raise NotImplementedError  # pragma: no cover

    @property
    def is_constant(self) -> bool:
        return False


class TopographyAnsatz(abc.ABC):
    """A prescribed smooth bed z(x) with a single crest."""

    @abc.abstractmethod
    def elevation(self, x: ArrayLike) -> np.ndarray:
        raise NotImplementedError  # pragma: no cover

    @abc.abstractmethod
    def slope(self, x: ArrayLike) -> np.ndarray:
        raise NotImplementedError  # pragma: no cover

    @abc.abstractmethod
    def curvature(self, x: ArrayLike) -> np.ndarray:
        raise NotImplementedError  # pragma: no cover

    @property
    @abc.abstractmethod
    def crest(self) -> float:
        """Position of the highest point."""
        raise NotImplementedError  # pragma: no cover


@dataclasses.dataclass(frozen=True)
class ConstantDepth(DepthAnsatz):
    """Constant depth h = h0, uniform flow when R = 0."""

    h0: float

    def __post_init__(self) -> None:
        if not self.h0 > 0:
            raise DomainError("Depth must be positive")

    def depth(self, x: ArrayLike) -> np.ndarray:
        return np.full(np.shape(x), self.h0)

    def first_derivative(self, x: ArrayLike) -> np.ndarray:
        return np.zeros(np.shape(x))

    def second_derivative(self, x: ArrayLike) -> np.ndarray:
        return np.zeros(np.shape(x))

    @property
    def is_constant(self) -> bool:
        return True


@dataclasses.dataclass(frozen=True)
class LinearDepth(DepthAnsatz):
    """Depth varying linearly from ``h_start`` at x = 0 to ``h_end`` at x = length."""

    h_start: float
    h_end: float
    length: float

    def __post_init__(self) -> None:
        if not (self.h_start > 0 and self.h_end > 0 and self.length > 0):
            raise DomainError("Linear depth needs positive end depths and length")

    @property
    def gradient(self) -> float:
        return (self.h_end - self.h_start) / self.length

    def depth(self, x: ArrayLike) -> np.ndarray:
        return self.h_start + self.gradient * np.asarray(x, dtype=float)

    def first_derivative(self, x: ArrayLike) -> np.ndarray:
        return np.full(np.shape(x), self.gradient)

    def second_derivative(self, x: ArrayLike) -> np.ndarray:
        return np.zeros(np.shape(x))


@dataclasses.dataclass(frozen=True)
class GaussianBumpDepth(DepthAnsatz):
    """Gaussian depth bump h = h0 (1 + a exp(-((x - c) / w)^2))."""

    h0: float
    amplitude: float
    center: float
    width: float

    def __post_init__(self) -> None:
        if not (self.h0 > 0 and self.width > 0 and self.amplitude > -1):
            raise DomainError("Gaussian depth needs h0 > 0, width > 0 and amplitude > -1")

    def _bump(self, x: ArrayLike) -> np.ndarray:
        s = (np.asarray(x, dtype=float) - self.center) / self.width
        return self.h0 * self.amplitude * np.exp(-s * s)

    def depth(self, x: ArrayLike) -> np.ndarray:
        return self.h0 + self._bump(x)

    def first_derivative(self, x: ArrayLike) -> np.ndarray:
        s = (np.asarray(x, dtype=float) - self.center) / self.width
        return -2.0 * s / self.width * self._bump(x)

    def second_derivative(self, x: ArrayLike) -> np.ndarray:
        s = (np.asarray(x, dtype=float) - self.center) / self.width
        return (4.0 * s * s - 2.0) / self.width**2 * self._bump(x)


@dataclasses.dataclass(frozen=True)
class TanhTransitionDepth(DepthAnsatz):
    """Smooth step from ``h_upstream`` to ``h_downstream`` centred on ``center``."""

    h_upstream: float
    h_downstream: float
    center: float
    width: float

    def __post_init__(self) -> None:
        if not (self.h_upstream > 0 and self.h_downstream > 0 and self.width > 0):
            raise DomainError("Tanh depth needs positive depths and width")

    def _tanh(self, x: ArrayLike) -> np.ndarray:
        return np.tanh((np.asarray(x, dtype=float) - self.center) / self.width)

    def depth(self, x: ArrayLike) -> np.ndarray:
        mean = 0.5 * (self.h_upstream + self.h_downstream)
        half_jump = 0.5 * (self.h_downstream - self.h_upstream)
        return mean + half_jump * self._tanh(x)

    def first_derivative(self, x: ArrayLike) -> np.ndarray:
        half_jump = 0.5 * (self.h_downstream - self.h_upstream)
        t = self._tanh(x)
        return half_jump / self.width * (1.0 - t * t)

    def second_derivative(self, x: ArrayLike) -> np.ndarray:
        half_jump = 0.5 * (self.h_downstream - self.h_upstream)
        t = self._tanh(x)
        return -2.0 * half_jump / self.width**2 * t * (1.0 - t * t)


@dataclasses.dataclass(frozen=True)
class GaussianBump(TopographyAnsatz):
    """Gaussian bed z = height exp(-((x - c) / w)^2)."""

    height: float
    center: float
    width: float

    def __post_init__(self) -> None:
        if not (self.height >= 0 and self.width > 0):
            raise DomainError("Gaussian bump needs non-negative height and positive width")

    def elevation(self, x: ArrayLike) -> np.ndarray:
        s = (np.asarray(x, dtype=float) - self.center) / self.width
        return self.height * np.exp(-s * s)

    def slope(self, x: ArrayLike) -> np.ndarray:
        s = (np.asarray(x, dtype=float) - self.center) / self.width
        return -2.0 * s / self.width * self.elevation(x)

    def curvature(self, x: ArrayLike) -> np.ndarray:
        s = (np.asarray(x, dtype=float) - self.center) / self.width
        return (4.0 * s * s - 2.0) / self.width**2 * self.elevation(x)

    @property
    def crest(self) -> float:
        return self.center


@dataclasses.dataclass(frozen=True)
class ParabolicBump(TopographyAnsatz):
    """Parabolic bed z = height (1 - ((x - c) / half_width)^2) inside, zero outside."""

    height: float
    center: float
    half_width: float

    def __post_init__(self) -> None:
        if not (self.height >= 0 and self.half_width > 0):
            raise DomainError("Parabolic bump needs non-negative height and positive width")

    def elevation(self, x: ArrayLike) -> np.ndarray:
        s = (np.asarray(x, dtype=float) - self.center) / self.half_width
        return np.where(np.abs(s) < 1.0, self.height * (1.0 - s * s), 0.0)

    def slope(self, x: ArrayLike) -> np.ndarray:
        s = (np.asarray(x, dtype=float) - self.center) / self.half_width
        return np.where(np.abs(s) < 1.0, -2.0 * self.height * s / self.half_width, 0.0)

    def curvature(self, x: ArrayLike) -> np.ndarray:
        s = (np.asarray(x, dtype=float) - self.center) / self.half_width
        return np.where(np.abs(s) < 1.0, -2.0 * self.height / self.half_width**2, 0.0)

    @property
    def crest(self) -> float:
        return self.center


def _check(
    name: str,
    function: Callable[[np.ndarray], np.ndarray],
    derivative: Callable[[np.ndarray], np.ndarray],
    points: np.ndarray,
    step: float,
    scale: float,
) -> None:
    estimate = (function(points + step) - function(points - step)) / (2.0 * step)
    exact = derivative(points)
    error = np.abs(estimate - exact)
    bound = DERIVATIVE_CHECK_TOLERANCE * np.maximum(np.abs(exact), scale)
    if np.any(error > bound):
        worst = int(np.argmax(error - bound))
        raise DomainError(
            f"{name} disagrees with its finite difference at x={points[worst]}: "
            f"{exact[worst]} vs {estimate[worst]}"
        )


def verify_derivatives(
    ansatz: DepthAnsatz, length: float, n_points: int = 32, seed: Optional[int] = 0
) -> None:
    """
    Spot check the analytic derivatives against central differences.

    :param ansatz: the depth family to check
    :param length: domain length, the checks sample (0, length)
    :raises DomainError: if a derivative is inconsistent
    """
    rng = np.random.default_rng(seed)
    step = 1e-5 * length
    points = rng.uniform(step, length - step, n_points)
    depth_scale = float(np.max(np.abs(ansatz.depth(np.linspace(0.0, length, 65)))))
    _check(
        "First derivative",
        ansatz.depth,
        ansatz.first_derivative,
        points,
        step,
        depth_scale / length,
    )
    _check(
        "Second derivative",
        ansatz.first_derivative,
        ansatz.second_derivative,
        points,
        step,
        depth_scale / length**2,
    )
