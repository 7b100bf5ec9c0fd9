# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

"""Tests for the command line interface and its exit codes."""

import json

import pytest
import structlog

from shallow_bench.catalog import Catalog
from shallow_bench.cli import EXIT_FAIL, EXIT_OK, EXIT_OUTPUT, EXIT_USAGE, main
from shallow_bench.formats import read_gnuplot


@pytest.fixture(autouse=True)
def _reset_logging():
    yield
    # main points structlog at the captured stderr of the test
    structlog.reset_defaults()


@pytest.fixture(name="packaged_catalog")
def _packaged_catalog(monkeypatch):
    monkeypatch.setattr(Catalog, "_instance", None)


def test_list(test_catalog, capsys):
    """Test the listing prints one line per entry"""
    assert main(["list"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 10
    assert lines[0].startswith("bump")
    assert "1D" in lines[0]


def test_list_filter(packaged_catalog, capsys):
    """Test filtering keeps matching ids and an empty result is not an error"""
    assert main(["list", "--filter", "transient"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines and all(line.startswith("transient/") for line in lines)
    assert any("2D" in line for line in lines)
    assert main(["list", "--filter", "nonexistent"]) == EXIT_OK
    assert capsys.readouterr().out == ""


def test_generate(packaged_catalog, tmp_path):
    """Test a Ritter solution on four cells"""
    out = tmp_path / "f.dat"
    arguments = ["generate", "--solution", "transient/dambreak/ritter", "--cells", "4"]
    arguments += ["--time", "1", "--out", str(out)]
    assert main(arguments) == EXIT_OK
    data = read_gnuplot(out)
    assert data.data.shape == (4, 7)
    assert float(data.header["time"]) == 1.0
    first = out.read_bytes()
    assert main(arguments) == EXIT_OK
    assert out.read_bytes() == first


def test_generate_csv_and_2d(packaged_catalog, tmp_path):
    """Test CSV output and 2D grids defaulting to square"""
    csv = tmp_path / "f.csv"
    arguments = ["generate", "--solution", "transient/thacker/planar-2d", "--cells", "5"]
    assert main(arguments + ["--format", "csv", "--out", str(csv)]) == EXIT_OK
    lines = csv.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "x,y,h,u,v,z"
    assert len(lines) == 26


def test_generate_with_parameters(test_catalog, tmp_path):
    """Test parameters reach the case and unknown ones are usage errors"""
    out = tmp_path / "f.dat"
    arguments = ["generate", "--solution", "dam/ritter", "--cells", "10", "--out", str(out)]
    assert main(arguments + ["--param", "h_left=0.01"]) == EXIT_OK
    assert read_gnuplot(out).parameters["h_left"] == 0.01
    assert main(arguments + ["--param", "colour=blue"]) == EXIT_USAGE
    assert main(arguments + ["--param", "h_left"]) == EXIT_USAGE
    assert main(arguments + ["--param", "h_left=-1"]) == EXIT_USAGE


def test_generate_errors(test_catalog, tmp_path):
    """Test unknown ids are usage errors and failed writes are output errors"""
    out = str(tmp_path / "f.dat")
    assert main(["generate", "--solution", "nope", "--cells", "4", "--out", out]) == EXIT_USAGE
    missing = str(tmp_path / "missing" / "f.dat")
    arguments = ["generate", "--solution", "dam/ritter", "--cells", "4", "--out", missing]
    assert main(arguments) == EXIT_OUTPUT
    assert main(["generate", "--solution", "dam/ritter", "--cells", "4"]) == EXIT_USAGE


def test_bench_exit_codes(test_catalog, tmp_path, capsys):
    """Test passing and failing benchmarks are told apart from usage errors"""
    report = tmp_path / "report.json"
    arguments = ["bench", "--solution", "lake/bowl", "--cells", "16,32"]
    arguments += ["--report", str(report), "--no-timestamp"]
    assert main(arguments) == EXIT_OK
    document = json.loads(report.read_text(encoding="utf-8"))
    assert document["passed"] is True
    assert "generated_at" not in document
    assert "well_balanced" in capsys.readouterr().out

    naive = arguments + ["--scheme", "naive", "--max-steps", "200"]
    assert main(naive) == EXIT_FAIL
    assert json.loads(report.read_text(encoding="utf-8"))["passed"] is False

    assert main(arguments + ["--scheme", "upwind"]) == EXIT_USAGE
    assert main(["bench", "--solution", "lake/bowl", "--cells", "16,x"]) == EXIT_USAGE
    flat = ["bench", "--solution", "thacker/curved-2d", "--cells", "8"]
    assert main(flat + ["--report", str(report)]) == EXIT_USAGE


def test_converge(test_catalog, tmp_path, capsys):
    """Test the exact generator against itself and the single grid error"""
    out = tmp_path / "table.txt"
    arguments = ["converge", "--solution", "dam/ritter", "--cells", "10,20", "--scheme"]
    assert main(arguments + ["exact", "--out", str(out)]) == EXIT_OK
    table = capsys.readouterr().out
    assert table.splitlines()[-1].endswith("exact")
    assert out.read_text(encoding="utf-8") == table
    single = ["converge", "--solution", "dam/ritter", "--cells", "10"]
    assert main(single) == EXIT_USAGE


def test_converge_with_scheme(test_catalog, capsys):
    """Test a transient case measured with the reference scheme"""
    assert main(["converge", "--solution", "dam/stoker", "--cells", "25,50"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 3
    assert lines[1].split()[0] == "25"

    pooled = ["converge", "--solution", "dam/stoker", "--cells", "25,50", "--workers", "2"]
    assert main(pooled) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == lines


def test_property_arguments_are_not_flags(test_catalog, capsys):
    """Test --NAME=value catalog properties do not reach the parser"""
    assert main(["--SHALLOW_BENCH_DRY_TOLERANCE=1e-9", "list"]) == EXIT_OK
    assert capsys.readouterr().out


def test_usage_errors():
    """Test parser errors and help exit codes"""
    assert main([]) == EXIT_USAGE
    assert main(["explode"]) == EXIT_USAGE
    assert main(["--help"]) == EXIT_OK
