# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

"""
Command line interface.

Exit codes: 0 on success, 1 when a benchmark verdict fails, 2 for usage and validation
errors, 3 when a file cannot be written.
"""

import argparse
import logging
import re
import sys
from typing import Dict, List, Optional, Sequence

import structlog

from shallow_bench import logger
from shallow_bench.catalog import Catalog
from shallow_bench.exceptions import (
    DomainError,
    OutputError,
    ParameterError,
    ShallowBenchError,
)
from shallow_bench.formats import (
    format_convergence_table,
    write_atomic,
    write_report,
    write_solution,
)
from shallow_bench.harness.bench import bench_case
from shallow_bench.harness.norms import convergence_order, error_norms
from shallow_bench.harness.solver import SchemeConfig, TopographyTreatment

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_OUTPUT = 3

_PROPERTY_ARGUMENT = re.compile(r"^--[A-Z][A-Z0-9_]*=")
# --NAME=value tokens are catalog properties, read by the property resolver


def _cell_list(text: str) -> List[int]:
    try:
        cells = [int(token) for token in text.split(",") if token.strip()]
    except ValueError as ex:
        raise argparse.ArgumentTypeError(f"invalid cell list '{text}'") from ex
    if not cells or any(n < 1 for n in cells):
        raise argparse.ArgumentTypeError(f"invalid cell list '{text}'")
    return cells


def _parameters(pairs: Optional[Sequence[str]]) -> Dict[str, str]:
    parameters: Dict[str, str] = {}
    for pair in pairs or []:
        name, separator, value = pair.partition("=")
        if not separator or not name.strip():
            raise ParameterError(f"Parameters are given as key=value, got '{pair}'")
        parameters[name.strip()] = value
    return parameters


def _configure_logging(verbose: bool) -> None:
    structlog.configure(
        wrapper_class=structlog.make_filtering_bound_logger(
            logging.INFO if verbose else logging.WARNING
        ),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shallow-bench",
        description="Analytic shallow water solutions and solver benchmarks.",
    )
    parser.add_argument("--verbose", action="store_true", help="log progress to stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    listing = commands.add_parser("list", help="list the catalog")
    listing.add_argument("--filter", default="", help="keep ids containing this text")

    generate = commands.add_parser("generate", help="write a discretized solution")
    generate.add_argument("--solution", required=True, help="catalog id")
    generate.add_argument("--cells", type=int, required=True, help="cells along x")
    generate.add_argument("--cells-y", type=int, help="cells along y, 2D cases only")
    generate.add_argument("--time", type=float, help="evaluation time")
    generate.add_argument("--param", action="append", metavar="KEY=VALUE")
    generate.add_argument("--format", choices=("gnuplot", "csv"), default="gnuplot")
    generate.add_argument("--out", required=True, help="output file")

    bench = commands.add_parser("bench", help="benchmark the reference solver")
    bench.add_argument("--solution", required=True, help="catalog id")
    bench.add_argument("--cells", type=_cell_list, required=True, help="N1,N2,...")
    bench.add_argument("--scheme", choices=("hydrostatic", "naive"), default="hydrostatic")
    bench.add_argument("--cfl", type=float, default=0.5)
    bench.add_argument("--max-steps", type=int, default=None, help="step cap per grid")
    bench.add_argument("--param", action="append", metavar="KEY=VALUE")
    bench.add_argument("--workers", type=int, default=1, help="grids run concurrently")
    bench.add_argument("--report", required=True, help="report file")
    bench.add_argument("--no-timestamp", action="store_true", help="reproducible reports")

    converge = commands.add_parser("converge", help="print a convergence table")
    converge.add_argument("--solution", required=True, help="catalog id")
    converge.add_argument("--cells", type=_cell_list, required=True, help="N1,N2,...")
    converge.add_argument(
        "--scheme", choices=("hydrostatic", "naive", "exact"), default="hydrostatic"
    )
    converge.add_argument("--cfl", type=float, default=0.5)
    converge.add_argument("--max-steps", type=int, default=None, help="step cap per grid")
    converge.add_argument("--param", action="append", metavar="KEY=VALUE")
    converge.add_argument("--workers", type=int, default=1, help="grids run concurrently")
    converge.add_argument("--out", help="also write the table to this file")
    return parser


def _list(args: argparse.Namespace) -> int:
    for entry in Catalog.listing(args.filter):
        summary = ", ".join(f"{key}={value}" for key, value in sorted(entry.kwargs.items()))
        print(f"{entry.entry_id:<40} {entry.dimension}D  {entry.regime:<20} {summary}")
    return EXIT_OK


def _generate(args: argparse.Namespace) -> int:
    case = Catalog.case(args.solution, _parameters(args.param))
    n_cells_y = args.cells_y
    if case.dimension == 2 and n_cells_y is None:
        n_cells_y = args.cells
    profile = case.generate(args.cells, time=args.time, n_cells_y=n_cells_y)
    write_solution(
        args.out,
        profile,
        args.solution,
        case.parameters,
        file_format=args.format,
        gravity=case.spec.gravity,
    )
    return EXIT_OK


def _scheme(args: argparse.Namespace) -> SchemeConfig:
    return SchemeConfig(
        topography=TopographyTreatment(args.scheme), cfl=args.cfl, max_steps=args.max_steps
    )


def _bench(args: argparse.Namespace) -> int:
    report = bench_case(
        args.solution,
        args.cells,
        scheme=_scheme(args),
        params=_parameters(args.param),
        workers=args.workers,
    )
    write_report(args.report, report, timestamp=not args.no_timestamp)
    for verdict in report.verdicts:
        print(f"{verdict.name:<20} {verdict.status.value}  {verdict.detail}".rstrip())
    return EXIT_OK if report.passed else EXIT_FAIL


def _converge(args: argparse.Namespace) -> int:
    cells: List[int] = args.cells
    if len(cells) < 2:
        raise DomainError("A convergence table needs at least two grid sizes")
    params = _parameters(args.param)
    if args.scheme == "exact":
        case = Catalog.case(args.solution, params)
        if case.dimension != 1:
            raise DomainError(f"Case '{args.solution}' is two-dimensional")
        errors = []
        for n_cells in cells:
            profile = case.generate(n_cells)
            errors.append(error_norms(profile, profile).h.l1)
        orders = convergence_order(list(zip(cells, errors)))
    else:
        report = bench_case(
            args.solution, cells, scheme=_scheme(args), params=params, workers=args.workers
        )
        failed = [grid for grid in report.grids if not grid.ok]
        if failed:
            raise DomainError(
                "; ".join(f"N={grid.n_cells} failed: {grid.error}" for grid in failed)
            )
        errors = [grid.norms.h.l1 for grid in report.grids if grid.norms]
        orders = report.orders_h
    table = format_convergence_table(cells, errors, orders)
    sys.stdout.write(table)
    if args.out:
        write_atomic(args.out, table)
    return EXIT_OK


_COMMANDS = {"list": _list, "generate": _generate, "bench": _bench, "converge": _converge}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the command line interface.

    :param argv: arguments without the program name, ``sys.argv[1:]`` when omitted
    :returns: the exit code
    """
    arguments = list(sys.argv[1:] if argv is None else argv)
    arguments = [token for token in arguments if not _PROPERTY_ARGUMENT.match(token)]
    parser = build_parser()
    try:
        args = parser.parse_args(arguments)
    except SystemExit as ex:
        return ex.code if isinstance(ex.code, int) else EXIT_USAGE
    _configure_logging(args.verbose)
    try:
        return _COMMANDS[args.command](args)
    except OutputError as ex:
        logger.error("Output failed", error=str(ex))
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_OUTPUT
    except (ShallowBenchError, FileNotFoundError) as ex:
        logger.error("Command failed", command=args.command, error=str(ex))
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_USAGE
