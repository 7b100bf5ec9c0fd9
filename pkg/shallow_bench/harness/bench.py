# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

"""
Benchmark a solver against a catalog case on a sequence of grids.

Each grid is run independently, optionally in a thread pool; a failing grid is recorded in
the report and the remaining grids still run. Verdicts summarize the invariants a good
scheme must honour.
"""

import dataclasses
import enum
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Mapping, Optional, Sequence

import numpy as np

from shallow_bench import logger
from shallow_bench.catalog import Catalog
from shallow_bench.cases.interfaces import AnalyticCase, CaseKind
from shallow_bench.definitions import BoundaryKind, SolutionProfile
from shallow_bench.exceptions import DomainError, HarnessError, StabilityError
from shallow_bench.harness.instrumentation import count, timed_instrumentation
from shallow_bench.harness.interfaces import Solver
from shallow_bench.harness.norms import ErrorNorms, convergence_order, error_norms
from shallow_bench.harness.solver import FiniteVolumeSolver, SchemeConfig
from shallow_bench.utils.helpers import to_primitive

WELL_BALANCED_TOLERANCE = 1e-13
""" Largest error on still water a well-balanced scheme may show. """

MASS_TOLERANCE = 1e-12
""" Largest relative change of the water volume in a closed channel. """

ERROR_GROWTH_TOLERANCE = 1e-9
""" Relative slack when checking that errors do not grow under refinement. """


class Status(enum.Enum):
    """Outcome of a verdict."""

    PASS = "PASS"
    FAIL = "FAIL"


@dataclasses.dataclass(frozen=True)
class Verdict:
    """One invariant checked over a benchmark."""

    name: str
    status: Status
    detail: str = ""

    def to_dict(self) -> Dict[str, str]:
        return {"name": self.name, "status": self.status.value, "detail": self.detail}


@dataclasses.dataclass(frozen=True)
class GridResult:
    """Outcome of one solver run."""

    n_cells: int
    norms: Optional[ErrorNorms] = None
    seconds: float = 0.0
    steps: int = 0
    converged: Optional[bool] = None
    min_depth: Optional[float] = None
    mass_drift: Optional[float] = None
    error: Optional[str] = None
    error_type: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None

    def to_dict(self) -> Dict[str, Any]:
        values = dataclasses.asdict(self)
        values["norms"] = self.norms.to_dict() if self.norms else None
        return values


@dataclasses.dataclass(frozen=True)
class BenchmarkReport:
    """Everything needed to judge and reproduce a benchmark."""

    case_id: str
    parameters: Dict[str, Any]
    spec: Dict[str, Any]
    scheme: Dict[str, Any]
    solver: str
    grids: List[GridResult]
    orders_h: List[Optional[float]]
    orders_q: List[Optional[float]]
    verdicts: List[Verdict]

    @property
    def passed(self) -> bool:
        return all(verdict.status is not Status.FAIL for verdict in self.verdicts)

    def verdict(self, name: str) -> Verdict:
        for verdict in self.verdicts:
            if verdict.name == name:
                return verdict
        raise KeyError(name)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "case_id": self.case_id,
            "parameters": to_primitive(self.parameters),
            "spec": self.spec,
            "scheme": self.scheme,
            "solver": self.solver,
            "grids": [grid.to_dict() for grid in self.grids],
            "orders": {"h": self.orders_h, "q": self.orders_q},
            "verdicts": [verdict.to_dict() for verdict in self.verdicts],
            "passed": self.passed,
        }


def _volume(profile: SolutionProfile) -> float:
    return float(np.sum(profile.h)) * profile.grid.cell_area


def _is_closed(case: AnalyticCase, exact: SolutionProfile) -> bool:
    closed = (BoundaryKind.WALL, BoundaryKind.PERIODIC)
    return case.spec.rain_rate == 0 and all(
        boundary.kind in closed for boundary in case.boundaries(exact)
    )


def _run_grid(
    case: AnalyticCase, case_id: str, n_cells: int, solver: Solver, scheme: SchemeConfig
) -> GridResult:
    exact = case.generate(n_cells)
    initial = case.initial_profile(n_cells)
    left, right = case.boundaries(exact)
    boundaries = (scheme.left or left, scheme.right or right)
    settings = Catalog.settings()
    with timed_instrumentation(f"bench.{case_id}.{n_cells}") as stopwatch:
        if case.kind is CaseKind.STEADY:
            numerical = solver.run_to_steady_state(
                initial,
                case.spec,
                boundaries,
                threshold=settings.steady_threshold,
                max_steps=settings.max_steps,
            )
            converged: Optional[bool] = bool(numerical.metadata.get("converged", False))
            reference = case.generate(n_cells, time=numerical.time)
        else:
            numerical = solver.run(initial, case.spec, case.reference_time, boundaries)
            converged = None
            reference = exact
    steps = int(numerical.metadata.get("steps", 0))
    count("bench.solver_steps", steps)
    drift = abs(_volume(numerical) - _volume(initial)) / max(_volume(initial), 1e-300)
    return GridResult(
        n_cells=n_cells,
        norms=error_norms(numerical, reference),
        seconds=stopwatch.seconds,
        steps=steps,
        converged=converged,
        min_depth=float(np.min(numerical.h)),
        mass_drift=drift if _is_closed(case, exact) else None,
    )


def _verdicts(case: AnalyticCase, grids: Sequence[GridResult]) -> List[Verdict]:
    done = [grid for grid in grids if grid.ok]
    failed = [grid for grid in grids if not grid.ok]
    verdicts = [
        Verdict(
            "completed",
            Status.FAIL if failed else Status.PASS,
            "; ".join(f"N={grid.n_cells}: {grid.error}" for grid in failed),
        )
    ]

    unstable = [grid for grid in failed if grid.error_type == StabilityError.__name__]
    negative = [grid for grid in done if grid.min_depth is not None and grid.min_depth < 0]
    verdicts.append(
        Verdict(
            "positivity",
            Status.FAIL if unstable or negative else Status.PASS,
            f"minimum depth {min((g.min_depth or 0.0) for g in done) if done else 'n/a'}",
        )
    )

    if case.kind is CaseKind.STEADY:
        stalled = [grid.n_cells for grid in done if grid.converged is False]
        verdicts.append(
            Verdict(
                "steady_state",
                Status.FAIL if stalled else Status.PASS,
                f"not converged on {stalled}" if stalled else "",
            )
        )

    if case.is_rest:
        worst = max(
            (max(g.norms.h.linf, g.norms.q.linf) for g in done if g.norms), default=0.0
        )
        verdicts.append(
            Verdict(
                "well_balanced",
                Status.PASS if done and worst < WELL_BALANCED_TOLERANCE else Status.FAIL,
                f"largest error {worst}",
            )
        )

    drifts = [grid.mass_drift for grid in done if grid.mass_drift is not None]
    if drifts:
        verdicts.append(
            Verdict(
                "mass_conservation",
                Status.PASS if max(drifts) < MASS_TOLERANCE else Status.FAIL,
                f"largest relative drift {max(drifts)}",
            )
        )

    if len(done) >= 2 and not case.is_rest:
        l1 = [grid.norms.h.l1 for grid in done if grid.norms]
        growing = any(
            fine > coarse * (1.0 + ERROR_GROWTH_TOLERANCE) for coarse, fine in zip(l1, l1[1:])
        )
        verdicts.append(
            Verdict(
                "convergence",
                Status.FAIL if growing else Status.PASS,
                "L1(h) grows under refinement" if growing else "",
            )
        )
    return verdicts


def _orders(grids: Sequence[GridResult], field: str) -> List[Optional[float]]:
    done = [grid for grid in grids if grid.ok and grid.norms]
    if len(done) < 2:
        return []
    return convergence_order(
        [(grid.n_cells, getattr(grid.norms, field).l1) for grid in done]  # type: ignore
    )


def bench_case(
    case_id: str,
    grids: Sequence[int],
    scheme: SchemeConfig = SchemeConfig(),
    params: Optional[Mapping[str, Any]] = None,
    solver: Optional[Solver] = None,
    workers: int = 1,
) -> BenchmarkReport:
    """
    Run a solver on a catalog case for every grid size and judge the results.

    Steady cases run from a perturbed exact state until the update rate falls below the
    catalog threshold; transient cases run from their initial state to the reference time.

    :param case_id: the catalog id
    :param grids: cell counts, strictly increasing
    :param scheme: options of the reference scheme, also used for boundary overrides
    :param params: parameter overrides of the case
    :param solver: the solver under test, the reference scheme when omitted
    :param workers: grids running at once; above one the solver must be thread safe and
        each worker thread records to its own instrument
    :raises DomainError: for two-dimensional cases, empty or unordered grids, or no workers
    :raises CatalogError: for unknown ids or parameters
    """
    if not grids:
        raise DomainError("Benchmarks need at least one grid")
    if any(fine <= coarse for coarse, fine in zip(grids, grids[1:])):
        raise DomainError(f"Grid sizes must increase strictly, got {list(grids)}")
    if workers < 1:
        raise DomainError(f"Benchmarks need at least one worker, got {workers}")
    case = Catalog.case(case_id, params)
    if case.dimension != 1:
        raise DomainError(f"Case '{case_id}' is two-dimensional, the harness is not")
    runner = solver or FiniteVolumeSolver(scheme)
    logger.info(
        "Benchmarking case",
        case_id=case_id,
        grids=list(grids),
        solver=runner.name,
        workers=workers,
    )

    def run(n_cells: int) -> GridResult:
        try:
            return _run_grid(case, case_id, n_cells, runner, scheme)
        except HarnessError as ex:
            logger.warning(
                "Benchmark grid failed", case_id=case_id, n_cells=n_cells, error=str(ex)
            )
            return GridResult(n_cells=n_cells, error=str(ex), error_type=type(ex).__name__)

    results: List[GridResult]
    if workers == 1:
        results = [run(n_cells) for n_cells in grids]
    else:
        with ThreadPoolExecutor(max_workers=min(workers, len(grids))) as executor:
            results = list(executor.map(run, grids))

    return BenchmarkReport(
        case_id=case_id,
        parameters=case.parameters,
        spec=to_primitive(dataclasses.asdict(case.spec)),
        scheme=scheme.to_dict(),
        solver=runner.name,
        grids=results,
        orders_h=_orders(results, "h"),
        orders_q=_orders(results, "q"),
        verdicts=_verdicts(case, results),
    )
