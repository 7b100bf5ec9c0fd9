# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

"""Contains concrete instrumentation implementations."""

import dataclasses
import functools
from collections import defaultdict
from contextlib import contextmanager
from datetime import datetime
from typing import Callable, Dict, Generator, List, Optional, TypeVar

from typing_extensions import ParamSpec

from shallow_bench import catalog, logger
from shallow_bench.harness.interfaces import Instrumentation


def _name_extractor(func: Callable, name: Optional[str]) -> str:
    return name if name else f"{func.__module__}.{func.__name__}"


P = ParamSpec("P")
R = TypeVar("R")


def instrument_timer(
    func: Optional[Callable[P, R]] = None, *, name: Optional[str] = None
) -> Callable[P, R]:
    """
    Decorator to add execution timing instrumentation to a function or method.

    The instrument is looked up from the catalog on every call, so decorating a function
    does not load the catalog.

    Example:
        This decorator can be used on any method to provide instrumentation reports::

        @instrument_timer
        def method_that_wants_instrumenting(*args, **kwargs) -> Any:
            ...

        An optional name can be specified when decorating a method and this will be used
        as the report id instead of the fully qualified name of the function::

        @instrument_timer(name="my.unique.name.for.reporting")
        def method_that_wants_instrumenting(*args, **kwargs) -> Any:
            ...

    :param name: Optional override for report name
    """

    if func is None:
        return functools.partial(instrument_timer, name=name)  # type: ignore

    name_to_use = _name_extractor(func, name)

    @functools.wraps(func)
    def _w(*args: P.args, **kwargs: P.kwargs) -> R:
        with timed_instrumentation(name_to_use):
            return func(*args, **kwargs)

    return _w


@dataclasses.dataclass
class Stopwatch:
    """Wall clock of an instrumented block, available once the block exits."""

    start_time: datetime
    end_time: Optional[datetime] = None

    @property
    def seconds(self) -> float:
        if self.end_time is None:
            return 0.0
        return (self.end_time - self.start_time).total_seconds()


@contextmanager
def timed_instrumentation(name: str) -> Generator[Stopwatch, None, None]:
    """
    Context manager to add execution timing instrumentation to a block of code.

    :param name: Report name
    :type name: str
    """
    instrumentation = catalog.Catalog.instrumentation()
    instrumentation.register_report(name)
    stopwatch = Stopwatch(start_time=datetime.today())
    yield stopwatch
    stopwatch.end_time = datetime.today()
    instrumentation.report(
        report_id=name,
        start_time=stopwatch.start_time,
        end_time=stopwatch.end_time,
    )


def count(name: str, increase: int = 1) -> None:
    """
    Add to a counter of the configured instrument.

    :param name: Counter name
    :param increase: the non-negative increase
    """
    instrumentation = catalog.Catalog.instrumentation()
    instrumentation.register_counter(name)
    instrumentation.increase_counter(counter_id=name, increase=increase)


class LogInstrument(Instrumentation):
    """
    A basic log instrument.

    Uses a logger to log execution times and counters as they occur.
    """

    def __init__(self) -> None:
        self._counters: Dict[str, int] = defaultdict(int)

    def register_report(self, report_id: str) -> None:
        """We don't need to do anything in this basic implementation"""
        pass

    def register_counter(self, counter_id: str) -> None:
        """We don't need to do anything in this basic implementation"""
        pass

    def report(self, report_id: str, start_time: datetime, end_time: datetime) -> None:
        if start_time > end_time:
            logger.warning("Instrumentation: start time is after end time")
        logger.info(
            "Instrumentation timing",
            report_id=report_id,
            seconds=(end_time - start_time).total_seconds(),
        )

    def increase_counter(self, counter_id: str, increase: int) -> None:
        if increase < 0:
            raise ValueError(f"Increase must be a positive integer, not {increase}")

        self._counters[counter_id] += increase
        logger.info(
            "Instrumentation counter",
            counter_id=counter_id,
            value=self._counters[counter_id],
        )


class RecordingInstrument(Instrumentation):
    """Keeps every timing and counter in memory, for reports and tests."""

    def __init__(self) -> None:
        self.timings: Dict[str, List[float]] = {}
        self.counters: Dict[str, int] = {}

    def register_report(self, report_id: str) -> None:
        self.timings.setdefault(report_id, [])

    def register_counter(self, counter_id: str) -> None:
        self.counters.setdefault(counter_id, 0)

    def report(self, report_id: str, start_time: datetime, end_time: datetime) -> None:
        self.timings.setdefault(report_id, []).append((end_time - start_time).total_seconds())

    def increase_counter(self, counter_id: str, increase: int) -> None:
        if increase < 0:
            raise ValueError(f"Increase must be a positive integer, not {increase}")
        self.counters[counter_id] = self.counters.get(counter_id, 0) + increase
