# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

from typing import Tuple, cast

import pytest

from shallow_bench.definitions import Boundary, ChannelSpec, SolutionProfile
from shallow_bench.exceptions import DomainError, EntryNotFound, StabilityError
from shallow_bench.harness.bench import Status, bench_case
from shallow_bench.harness.instrumentation import RecordingInstrument
from shallow_bench.harness.interfaces import Solver
from shallow_bench.harness.solver import SchemeConfig, TopographyTreatment


class ExplodingSolver(Solver):
    """A solver that loses positivity on every run."""

    @property
    def name(self) -> str:
        return "exploding"

    def run(
        self,
        initial: SolutionProfile,
        spec: ChannelSpec,
        t_end: float,
        boundaries: Tuple[Boundary, Boundary],
    ) -> SolutionProfile:
        raise StabilityError("Negative depth", step=3, cell=1)

    def run_to_steady_state(
        self,
        initial: SolutionProfile,
        spec: ChannelSpec,
        boundaries: Tuple[Boundary, Boundary],
        threshold: float,
        max_steps: int,
    ) -> SolutionProfile:
        raise StabilityError("Negative depth", step=3, cell=1)


def test_lake_at_rest_bench_passes(test_catalog):
    """Test the well-balanced scheme keeps still water exactly"""
    report = bench_case("lake/bowl", [16, 32])
    assert report.passed
    assert report.verdict("well_balanced").status is Status.PASS
    assert report.verdict("steady_state").status is Status.PASS
    assert report.verdict("mass_conservation").status is Status.PASS
    assert [grid.n_cells for grid in report.grids] == [16, 32]
    assert all(grid.converged for grid in report.grids)
    assert report.orders_h == [None]
    with pytest.raises(KeyError):
        report.verdict("convergence")


def test_naive_scheme_fails_well_balancing(test_catalog):
    """Test a naive bed source is caught on still water"""
    scheme = SchemeConfig(topography=TopographyTreatment.NAIVE, max_steps=200)
    report = bench_case("lake/bowl", [16], scheme=scheme)
    assert not report.passed
    assert report.verdict("well_balanced").status is Status.FAIL
    assert report.solver == "rusanov-naive"


def test_transient_bench(test_catalog):
    """Test a wet-bed dam break runs to its reference time on every grid"""
    report = bench_case("dam/stoker", [25, 50])
    assert report.verdict("completed").status is Status.PASS
    assert report.verdict("positivity").status is Status.PASS
    assert report.verdict("mass_conservation").status is Status.PASS
    assert len(report.orders_h) == 1 and len(report.orders_q) == 1
    assert all(grid.converged is None for grid in report.grids)
    assert all(grid.steps > 0 for grid in report.grids)

    instrument = cast(RecordingInstrument, test_catalog.get_instrumentation())
    assert len(instrument.timings["bench.dam/stoker.25"]) == 1
    assert instrument.counters["bench.solver_steps"] == sum(g.steps for g in report.grids)


def test_failed_grids_are_recorded(test_catalog):
    """Test a failing solver is reported rather than raised"""
    report = bench_case("dam/ritter", [10, 20], solver=ExplodingSolver())
    assert not report.passed
    assert [grid.error_type for grid in report.grids] == ["StabilityError"] * 2
    assert report.verdict("completed").status is Status.FAIL
    assert report.verdict("positivity").status is Status.FAIL
    assert report.orders_h == []
    assert report.solver == "exploding"


def test_report_document(test_catalog):
    """Test reports carry what is needed to reproduce them"""
    document = bench_case("uniform", [8], scheme=SchemeConfig(max_steps=10)).to_dict()
    assert document["case_id"] == "uniform"
    assert document["parameters"]["slope"] == 0.001
    assert document["spec"]["friction"]["family"] == "manning"
    assert document["scheme"]["max_steps"] == 10
    assert document["grids"][0]["norms"]["h"]["l1"] >= 0
    assert {verdict["name"] for verdict in document["verdicts"]} >= {"completed"}
    assert document["passed"] is False


def test_bench_validation(test_catalog):
    """Test grids, dimensions and ids are checked before any run"""
    with pytest.raises(DomainError):
        bench_case("lake/bowl", [])
    with pytest.raises(DomainError):
        bench_case("lake/bowl", [32, 16])
    with pytest.raises(DomainError, match="two-dimensional"):
        bench_case("thacker/curved-2d", [16])
    with pytest.raises(EntryNotFound):
        bench_case("nowhere", [16])


def test_steady_bench_converges_at_first_order(test_catalog):
    """Test the reference scheme reaches first order on a frictional steady flow"""
    report = bench_case("macdonald", [50, 100, 200])
    assert report.passed
    assert all(grid.converged for grid in report.grids)
    assert len(report.orders_h) == 2
    assert all(0.8 <= order <= 1.2 for order in report.orders_h)


def test_shock_bench_order_is_below_one(test_catalog):
    """Test the wet-bed dam break converges at an order between one half and one"""
    report = bench_case("dam/stoker", [100, 200, 400])
    assert report.passed
    assert len(report.orders_h) == 2
    assert all(0.5 <= order <= 1.0 for order in report.orders_h)


def test_grids_run_concurrently_in_order(test_catalog):
    """Test a thread pool yields the sequential report grid by grid"""
    sequential = bench_case("dam/stoker", [25, 50, 100])
    pooled = bench_case("dam/stoker", [25, 50, 100], workers=3)
    assert [grid.n_cells for grid in pooled.grids] == [25, 50, 100]
    assert [grid.steps for grid in pooled.grids] == [grid.steps for grid in sequential.grids]
    for fast, slow in zip(pooled.grids, sequential.grids):
        assert fast.norms == slow.norms
    assert pooled.orders_h == sequential.orders_h
    assert pooled.passed == sequential.passed

    failing = bench_case("dam/ritter", [10, 20], solver=ExplodingSolver(), workers=2)
    assert [grid.error_type for grid in failing.grids] == ["StabilityError"] * 2
    with pytest.raises(DomainError, match="worker"):
        bench_case("dam/stoker", [25], workers=0)
