# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

"""Shallow-bench errors."""

from typing import TYPE_CHECKING, Optional, Sequence

if TYPE_CHECKING:  # pragma: no cover
    from shallow_bench.definitions import SolutionProfile


class ShallowBenchError(Exception):
    """Generic base class error for all shallow-bench errors."""


class DomainError(ShallowBenchError, ValueError):
    """Error raised when an input violates the precondition of an operation."""


class DryStateError(DomainError):
    """Error raised when a pointwise diagnostic is requested on a dry state."""


class StencilError(DomainError):
    """Error raised when a grid is too coarse for a finite difference stencil."""


class RootFindingError(ShallowBenchError):
    """Error raised when a bracketed root finder does not converge."""

    def __init__(self, message: str, residuals: Sequence[float] = ()) -> None:
        super().__init__(message)
        self.residuals = tuple(residuals)


class GvfError(ShallowBenchError):
    """Base class for gradually varied flow errors."""


class CriticalSingularity(GvfError):
    """Error raised when the flow approaches critical depth, where h' is singular."""

    def __init__(self, message: str, depth: float, position: Optional[float] = None) -> None:
        super().__init__(message)
        self.depth = depth
        self.position = position


class AmbiguousZone(GvfError):
    """Error raised when a depth sits on the boundary between two zones."""


class PartialProfileError(GvfError):
    """
    Error raised when a backwater integration is arrested before the end of the reach.

    Carries the position where integration stopped and the profile computed up to there.
    """

    def __init__(
        self, message: str, position: float, profile: Optional["SolutionProfile"]
    ) -> None:
        super().__init__(message)
        self.position = position
        self.profile = profile


class DryOutError(GvfError):
    """Error raised when an integrated depth falls below the dry tolerance."""

    def __init__(self, message: str, position: float) -> None:
        super().__init__(message)
        self.position = position


class CompositionError(GvfError):
    """Error raised when reaches cannot be concatenated."""


class SteadyError(ShallowBenchError):
    """Base class for steady solution generator errors."""


class ChokedFlowError(SteadyError):
    """Error raised when the available head is below the critical head."""


class BranchError(SteadyError):
    """Error raised when the depth branch of a transcritical flow is ambiguous."""


class IntegrationError(SteadyError):
    """Error raised when a topography quadrature does not meet its tolerance."""

    def __init__(self, message: str, residual: float) -> None:
        super().__init__(message)
        self.residual = residual


class RegimeMismatch(SteadyError):
    """Error raised when a generated flow does not have the labelled regime."""


class HarnessError(ShallowBenchError):
    """Base class for benchmarking harness errors."""


class StabilityError(HarnessError):
    """Error raised when a solver step loses positivity or exceeds the CFL bound."""

    def __init__(self, message: str, step: int, cell: int) -> None:
        super().__init__(message)
        self.step = step
        self.cell = cell


class NumericalFailure(HarnessError):
    """Error raised when a solver state stops being finite."""

    def __init__(self, message: str, step: int, cell: int) -> None:
        super().__init__(message)
        self.step = step
        self.cell = cell


class ComparisonError(HarnessError):
    """Error raised when two profiles cannot be compared."""


class CatalogError(ShallowBenchError):
    """Base class for catalog errors."""


class EntryNotFound(CatalogError):
    """Error raised when a requested solution id is not in the catalog."""


class ParameterError(CatalogError, DomainError):
    """Error raised when a parameter override is unknown or malformed."""


class CatalogConfigError(CatalogError):
    """Error raised when there is a problem with catalog config."""


class InvalidCaseType(CatalogError):
    """Error raised when a catalog factory does not produce an analytic case."""


class OutputError(ShallowBenchError):
    """Error raised when an output file cannot be written."""
