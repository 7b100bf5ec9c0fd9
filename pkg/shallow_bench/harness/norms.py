# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

"""Error norms between discretized solutions and measured convergence orders."""

import dataclasses
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from shallow_bench.definitions import SolutionProfile
from shallow_bench.exceptions import ComparisonError, DomainError

TIME_TOLERANCE = 1e-12
""" Relative tolerance on the times of compared profiles. """


@dataclasses.dataclass(frozen=True)
class Norms:
    """Cell-averaged L1, L2 and maximum norms of an error field."""

    l1: float
    l2: float
    linf: float

    @classmethod
    def of(cls, error: np.ndarray) -> "Norms":
        magnitude = np.abs(np.asarray(error, dtype=float)).reshape(-1)
        if magnitude.size == 0:
            return cls(0.0, 0.0, 0.0)
        return cls(
            l1=float(np.mean(magnitude)),
            l2=float(math.sqrt(np.mean(magnitude * magnitude))),
            linf=float(np.max(magnitude)),
        )

    def to_dict(self) -> Dict[str, float]:
        return dataclasses.asdict(self)


@dataclasses.dataclass(frozen=True)
class ErrorNorms:
    """Norms of the depth and discharge errors."""

    h: Norms
    q: Norms

    def to_dict(self) -> Dict[str, Dict[str, float]]:
        return {"h": self.h.to_dict(), "q": self.q.to_dict()}


def error_norms(numerical: SolutionProfile, exact: SolutionProfile) -> ErrorNorms:
    """
    Norms of the difference between two profiles on the same grid at the same time.

    Cells dry in both profiles contribute no error.

    :raises ComparisonError: if the grids or the times differ
    """
    if not numerical.grid.matches(exact.grid):
        raise ComparisonError(
            f"Cannot compare a profile on {numerical.grid.shape} cells of length "
            f"{numerical.grid.length} with one on {exact.grid.shape} cells of length "
            f"{exact.grid.length}"
        )
    if abs(numerical.time - exact.time) > TIME_TOLERANCE * max(1.0, abs(exact.time)):
        raise ComparisonError(
            f"Cannot compare a profile at t={numerical.time} with one at t={exact.time}"
        )
    both_dry = ~numerical.wet & ~exact.wet
    error_h = np.where(both_dry, 0.0, numerical.h - exact.h)
    error_q = np.where(both_dry, 0.0, numerical.discharge - exact.discharge)
    return ErrorNorms(h=Norms.of(error_h), q=Norms.of(error_q))


def convergence_order(errors: Sequence[Tuple[int, float]]) -> List[Optional[float]]:
    """
    Orders between successive refinements, log(e_k / e_k+1) / log(N_k+1 / N_k).

    An order is ``None`` when either error is zero, the signature of an exact method.

    :param errors: (cell count, error) pairs with strictly increasing cell counts
    :raises DomainError: for fewer than two entries, non-increasing cell counts or
        negative errors
    """
    if len(errors) < 2:
        raise DomainError("Convergence orders need at least two grids")
    orders: List[Optional[float]] = []
    for (n_coarse, e_coarse), (n_fine, e_fine) in zip(errors, errors[1:]):
        if not n_fine > n_coarse:
            raise DomainError(f"Cell counts must increase strictly, got {n_coarse}, {n_fine}")
        if e_coarse < 0 or e_fine < 0:
            raise DomainError("Errors must be non-negative")
        if e_coarse == 0 or e_fine == 0:
            orders.append(None)
            continue
        orders.append(math.log(e_coarse / e_fine) / math.log(n_fine / n_coarse))
    return orders
