# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

"""
Output formats: gnuplot and CSV data files, JSON benchmark reports.

Numbers are written as the shortest decimal that reads back as the same 64-bit float, so a
file parsed back reproduces the written profile exactly. Every file is written to a
temporary file in the target directory and renamed into place.
"""

import dataclasses
import json
import os
import pathlib
import tempfile
from datetime import datetime, timezone
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from shallow_bench import logger
from shallow_bench.definitions import GRAVITY, SolutionProfile
from shallow_bench.exceptions import OutputError
from shallow_bench.harness.bench import BenchmarkReport
from shallow_bench.hydraulics import froude_numbers
from shallow_bench.utils.helpers import flatten_dict, format_number, to_primitive

COLUMNS_1D = ("x", "h", "u", "z", "q", "h+z", "Fr")
COLUMNS_2D = ("x", "y", "h", "u", "v", "z")

PathLike = Union[str, pathlib.Path]


def write_atomic(path: PathLike, text: str) -> pathlib.Path:
    """
    Write text with LF line endings through a temporary file renamed into place.

    :param path: the target file
    :param text: the full file content
    :raises OutputError: if the file cannot be written
    """
    target = pathlib.Path(path)
    directory = target.parent if str(target.parent) else pathlib.Path(".")
    temporary: Optional[str] = None
    try:
        with tempfile.NamedTemporaryFile(
            "w",
            dir=directory,
            prefix=f".{target.name}.",
            suffix=".tmp",
            encoding="utf-8",
            newline="\n",
            delete=False,
        ) as handle:
            temporary = handle.name
            handle.write(text)
        os.replace(temporary, target)
    except OSError as ex:
        if temporary is not None and os.path.exists(temporary):
            os.remove(temporary)
        raise OutputError(f"Cannot write '{target}': {ex}") from ex
    logger.info("Wrote file", path=str(target), size=len(text))
    return target


def profile_columns(
    profile: SolutionProfile, gravity: float = GRAVITY
) -> Tuple[Tuple[str, ...], List[np.ndarray]]:
    """
    Column names and flattened column values of a profile.

    2D values run along x fastest, one y-row after the other.
    """
    grid = profile.grid
    if grid.is_2d:
        xs, ys = np.meshgrid(grid.x, grid.y)
        v = profile.v if profile.v is not None else np.zeros(grid.shape)
        fields = [xs, ys, profile.h, profile.u, v, profile.z]
        return COLUMNS_2D, [np.asarray(field, dtype=float).reshape(-1) for field in fields]
    froude = froude_numbers(profile.h, profile.u, gravity, profile.dry_tolerance)
    fields = [
        grid.x,
        profile.h,
        profile.u,
        profile.z,
        profile.discharge,
        profile.free_surface,
        froude,
    ]
    return COLUMNS_1D, [np.asarray(field, dtype=float) for field in fields]


def _header_value(value: Any) -> str:
    return json.dumps(to_primitive(value), sort_keys=True)


def gnuplot_header(
    profile: SolutionProfile, case_id: str, parameters: Mapping[str, Any]
) -> List[str]:
    grid = profile.grid
    cells = f"{grid.n_cells} {grid.n_cells_y}" if grid.is_2d else f"{grid.n_cells}"
    lines = [
        f"# id: {case_id}",
        f"# cells: {cells}",
        f"# time: {format_number(profile.time)}",
    ]
    for name, value in sorted(parameters.items()):
        lines.append(f"# param.{name}: {_header_value(value)}")
    for name, value in sorted(flatten_dict(to_primitive(profile.metadata)).items()):
        lines.append(f"# meta.{name}: {_header_value(value)}")
    return lines


def _rows(columns: Sequence[np.ndarray], separator: str) -> Iterator[str]:
    for values in zip(*columns):
        yield separator.join(format_number(value) for value in values)


def format_gnuplot(
    profile: SolutionProfile,
    case_id: str,
    parameters: Mapping[str, Any],
    gravity: float = GRAVITY,
) -> str:
    """
    Render a profile as gnuplot ASCII.

    Lines starting with ``#`` hold the id, cell counts, time, parameters, metadata and
    column names. 2D data is written one y-row per block with blank lines between blocks.
    """
    names, columns = profile_columns(profile, gravity)
    lines = gnuplot_header(profile, case_id, parameters)
    lines.append("# columns: " + " ".join(names))
    rows = list(_rows(columns, " "))
    if profile.grid.is_2d:
        width = profile.grid.n_cells
        starts = range(0, len(rows), width)
        blocks = ["\n".join(rows[start : start + width]) for start in starts]
        lines.append("\n\n".join(blocks))
    else:
        lines.extend(rows)
    return "\n".join(lines) + "\n"


def format_csv(profile: SolutionProfile, gravity: float = GRAVITY) -> str:
    """Render a profile as CSV with a header row of column names."""
    names, columns = profile_columns(profile, gravity)
    return "\n".join([",".join(names), *_rows(columns, ",")]) + "\n"


def write_solution(
    path: PathLike,
    profile: SolutionProfile,
    case_id: str,
    parameters: Mapping[str, Any],
    file_format: str = "gnuplot",
    gravity: float = GRAVITY,
) -> pathlib.Path:
    """
    Write a discretized solution.

    :param file_format: ``gnuplot`` or ``csv``
    :raises OutputError: for an unknown format or a failed write
    """
    if file_format == "gnuplot":
        text = format_gnuplot(profile, case_id, parameters, gravity)
    elif file_format == "csv":
        text = format_csv(profile, gravity)
    else:
        raise OutputError(f"Unknown output format '{file_format}'")
    return write_atomic(path, text)


@dataclasses.dataclass(frozen=True)
class GnuplotData:
    """A parsed gnuplot file."""

    header: Dict[str, str]
    columns: Tuple[str, ...]
    data: np.ndarray

    def column(self, name: str) -> np.ndarray:
        return self.data[:, self.columns.index(name)]

    @property
    def parameters(self) -> Dict[str, Any]:
        prefix = "param."
        return {
            key[len(prefix) :]: json.loads(value)
            for key, value in self.header.items()
            if key.startswith(prefix)
        }


def parse_gnuplot(text: str) -> GnuplotData:
    """
    Parse gnuplot ASCII written by `format_gnuplot`.

    :raises OutputError: if the text has no column line or ragged rows
    """
    header: Dict[str, str] = {}
    rows: List[List[float]] = []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition(":")
            header[key.strip()] = value.strip()
        elif line.strip():
            rows.append([float(token) for token in line.split()])
    if "columns" not in header:
        raise OutputError("The file has no '# columns:' line")
    columns = tuple(header["columns"].split())
    if any(len(row) != len(columns) for row in rows):
        raise OutputError(f"Every data line must have {len(columns)} values")
    data = np.array(rows, dtype=float).reshape(len(rows), len(columns))
    return GnuplotData(header=header, columns=columns, data=data)


def read_gnuplot(path: PathLike) -> GnuplotData:
    try:
        text = pathlib.Path(path).read_text(encoding="utf-8")
    except OSError as ex:
        raise OutputError(f"Cannot read '{path}': {ex}") from ex
    return parse_gnuplot(text)


def report_document(report: BenchmarkReport, timestamp: bool = True) -> Dict[str, Any]:
    document = report.to_dict()
    if timestamp:
        document["generated_at"] = datetime.now(timezone.utc).isoformat()
    return to_primitive(document)


def write_report(
    path: PathLike, report: BenchmarkReport, timestamp: bool = True
) -> pathlib.Path:
    """
    Write a benchmark report as a JSON document with sorted keys.

    :param timestamp: add the generation time, off for reproducible files
    :raises OutputError: if the file cannot be written
    """
    text = json.dumps(report_document(report, timestamp), indent=2, sort_keys=True)
    return write_atomic(path, text + "\n")


def format_convergence_table(
    cells: Sequence[int], errors: Sequence[float], orders: Sequence[Optional[float]]
) -> str:
    """
    Aligned table of cell counts, L1 depth errors and orders.

    The first row has no order (``-``); an undefined order between exact results is
    written ``exact``.
    """
    labels = ["-"] + ["exact" if order is None else f"{order:.4f}" for order in orders]
    rows = [("N", "L1(h)", "order")]
    for n_cells, error, label in zip(cells, errors, labels):
        rows.append((str(n_cells), format_number(error), label))
    widths = [max(len(row[index]) for row in rows) for index in range(3)]
    lines = ["  ".join(cell.rjust(width) for cell, width in zip(row, widths)) for row in rows]
    return "\n".join(lines) + "\n"
