# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

"""
Service interfaces of the benchmarking harness.

Solvers and instruments are pluggable: the harness only relies on these definitions.
"""

import abc
from datetime import datetime
from typing import Tuple

from shallow_bench.definitions import Boundary, ChannelSpec, SolutionProfile


class Solver(abc.ABC):
    """
    Definition of a one-dimensional shallow water solver under test.

    Implementations advance a `SolutionProfile` in time with their own scheme. The
    reference implementation is `shallow_bench.harness.solver.FiniteVolumeSolver`.
    """

    @property
    @abc.abstractmethod
    def name(self) -> str:
        """A short identifier of the scheme, written to reports."""
        raise NotImplementedError  # pragma: no cover

    @abc.abstractmethod
    def run(
        self,
        initial: SolutionProfile,
        spec: ChannelSpec,
        t_end: float,
        boundaries: Tuple[Boundary, Boundary],
    ) -> SolutionProfile:
        """
        Advance the initial state up to ``t_end``.

        :param initial: the state at ``initial.time``
        :param spec: the physical setting
        :param t_end: the final time, not before ``initial.time``
        :param boundaries: the left and right boundary conditions
        :return: the state at ``t_end``
        :raises HarnessError: if the run fails
        """
        raise NotImplementedError  # pragma: no cover

    @abc.abstractmethod
    def run_to_steady_state(
        self,
        initial: SolutionProfile,
        spec: ChannelSpec,
        boundaries: Tuple[Boundary, Boundary],
        threshold: float,
        max_steps: int,
    ) -> SolutionProfile:
        """
        Advance until the discrete update rate drops below ``threshold``.

        The returned profile metadata records ``converged`` and the number of ``steps``.

        :raises HarnessError: if the run fails
        """
        raise NotImplementedError  # pragma: no cover


class Instrumentation(abc.ABC):
    """
    Definition of instrumentation service.

    Instrumentation can be used to report on execution timings and counts.
    """

    @abc.abstractmethod
    def register_report(self, report_id: str) -> None:
        """
        Register a new thing that will be timed.

        :param report_id: An id to associate the timings with
        :type report_id: str
        """
        raise NotImplementedError  # pragma: no cover

    @abc.abstractmethod
    def register_counter(self, counter_id: str) -> None:
        """
        Register a new counter.

        :param counter_id: An id to associate the metric with
        :type counter_id: str
        """
        raise NotImplementedError  # pragma: no cover

    @abc.abstractmethod
    def report(self, report_id: str, start_time: datetime, end_time: datetime) -> None:
        """
        Report an execution timing.

        :param report_id: An id to associate the timings with
        :type report_id: str
        :param start_time: the start time of execution
        :type start_time: datetime
        :param end_time: the end time of execution
        :type end_time: datetime
        """
        raise NotImplementedError  # pragma: no cover

    @abc.abstractmethod
    def increase_counter(self, counter_id: str, increase: int) -> None:
        """
        Report an increase to a counter.

        :param counter_id: An id to associate the metric with
        :type counter_id: str
        :param increase: the change to the metric, must be positive
        :type increase: int
        :raises ValueError: if `increase` is negative
        """
        raise NotImplementedError  # pragma: no cover
