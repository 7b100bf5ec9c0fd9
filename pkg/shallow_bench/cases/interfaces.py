# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

"""
Contains the interface every catalog solution implements.

Catalog entries name a factory class; the catalog instantiates it with the catalog settings
and the entry parameters and only relies on this definition afterwards.
"""

import abc
import enum
from typing import Any, Dict, Optional, Tuple

from shallow_bench.definitions import Boundary, ChannelSpec, SolutionProfile


class CaseKind(enum.Enum):
    """Whether a case is an equilibrium or evolves in time."""

    STEADY = "steady"
    TRANSIENT = "transient"


class AnalyticCase(abc.ABC):
    """
    Definition of an analytic benchmark case.

    A case generates its exact solution on a grid, provides the state a solver starts from
    and the boundary conditions under which the exact solution holds.
    """

    @property
    @abc.abstractmethod
    def kind(self) -> CaseKind:
        raise NotImplementedError  # pragma: no cover

    @property
    @abc.abstractmethod
    def spec(self) -> ChannelSpec:
        """The physical setting of the case."""
        raise NotImplementedError  # pragma: no cover

    @property
    @abc.abstractmethod
    def regime(self) -> str:
        """A label such as ``subcritical`` or ``dam-break``."""
        raise NotImplementedError  # pragma: no cover

    @property
    @abc.abstractmethod
    def parameters(self) -> Dict[str, Any]:
        """The parameters the case was built with, as catalog primitives."""
        raise NotImplementedError  # pragma: no cover

    @property
    def dimension(self) -> int:
        return 1

    @property
    def reference_time(self) -> float:
        """The time benchmarks compare at; zero for steady cases."""
        return 0.0

    @property
    def is_rest(self) -> bool:
        """Whether the exact solution is still water."""
        return False

    @abc.abstractmethod
    def generate(
        self,
        n_cells: int,
        time: Optional[float] = None,
        n_cells_y: Optional[int] = None,
    ) -> SolutionProfile:
        """
        Discretize the exact solution at cell centres.

        :param n_cells: number of cells along x
        :param time: evaluation time, the reference time when omitted
        :param n_cells_y: number of cells along y for two-dimensional cases
        :raises DomainError: if the case cannot be generated with these arguments
        """
        raise NotImplementedError  # pragma: no cover

    @abc.abstractmethod
    def initial_profile(self, n_cells: int) -> SolutionProfile:
        """
        State a solver run starts from.

        :param n_cells: number of cells
        """
        raise NotImplementedError  # pragma: no cover

    @abc.abstractmethod
    def boundaries(self, profile: SolutionProfile) -> Tuple[Boundary, Boundary]:
        """
        Left and right boundary conditions consistent with the exact solution.

        :param profile: the exact solution on the grid of the run
        """
        raise NotImplementedError  # pragma: no cover
