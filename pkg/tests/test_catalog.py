# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

from pathlib import Path

import numpy as np
import pytest

import shallow_bench.catalog
from shallow_bench.cases.steady import LakeAtRestCase
from shallow_bench.cases.transient import DamBreakCase, ThackerCase
from shallow_bench.catalog import Catalog, coerce_parameter, resolve_parameters
from shallow_bench.config import DictionaryCatalogMap, catalog_map_from_json_file
from shallow_bench.definitions import CatalogEntry
from shallow_bench.exceptions import EntryNotFound, InvalidCaseType, ParameterError
from shallow_bench.files import PACKAGE_DIR, FileLocator
from shallow_bench.instantiator import build_fqn, load_class
from tests.conftest import TEST_ENTRIES


def test_nonexistent_catalog_json(monkeypatch):
    """Test a missing catalog file raises the expected error"""
    monkeypatch.setattr(shallow_bench.catalog, "CATALOG_CONFIG", "dummy.json")
    monkeypatch.setattr(Catalog, "_instance", None)
    with pytest.raises(FileNotFoundError):
        Catalog.case("steady/lake-at-rest/bowl")


def test_packaged_catalog(monkeypatch):
    """Test the packaged catalog is found and its entries instantiate"""
    monkeypatch.setattr(Catalog, "_instance", None)
    case = Catalog.case("steady/lake-at-rest/bowl")
    assert isinstance(case, LakeAtRestCase)
    assert Catalog.settings().max_steps == 1000000


def test_instance(mock_catalog):
    """Test that we get the type of catalog we expect"""
    with mock_catalog(DictionaryCatalogMap({})) as test_catalog:
        assert isinstance(test_catalog, Catalog)
        assert list(Catalog.catalog_map()) == []


def test_example_case(test_catalog):
    """Test that a returned case works"""
    case = Catalog.case("dam/ritter")
    assert isinstance(case, DamBreakCase)
    assert case.reference_time == 0.5
    assert case.generate(20).grid.n_cells == 20


def test_cases_are_cached(test_catalog):
    """Test entries without overrides are built once per thread"""
    assert Catalog.case("lake/bowl") is Catalog.case("lake/bowl")
    assert Catalog.case("lake/bowl", {"eta": 0.6}) is not Catalog.case("lake/bowl")


def test_mock_entries_not_persisted(mock_catalog):
    """Test mock catalogs do not leak into the next one"""
    with mock_catalog(DictionaryCatalogMap({})):
        with pytest.raises(EntryNotFound):
            _ = Catalog.case("lake/bowl")


def test_get_by_non_existent_id(test_catalog):
    """Test that getting a non-existent case raises the expected error"""
    with pytest.raises(EntryNotFound):
        _ = Catalog.case("non-existent")


def test_overrides(test_catalog):
    """Test overrides replace entry parameters and reach the constructor defaults"""
    case = Catalog.case("dam/ritter", {"time": "0.25", "h_left": 0.01})
    assert case.reference_time == 0.25
    assert case.parameters["h_left"] == 0.01
    thacker = Catalog.case("thacker/planar-1d", {"cell_average": "true"})
    assert isinstance(thacker, ThackerCase)
    assert thacker.parameters["cell_average"] is True


def test_unknown_override(test_catalog):
    """Test unknown parameters name the accepted ones"""
    with pytest.raises(ParameterError, match="expected some of"):
        Catalog.case("dam/ritter", {"colour": "blue"})
    with pytest.raises(ParameterError):
        Catalog.case("dam/ritter", {"time": "soon"})


def test_coerce_parameter():
    """Test overrides take the type of their default"""
    assert coerce_parameter("flag", "False", True) is False
    assert coerce_parameter("n", "3", 1) == 3
    assert coerce_parameter("x", "2.5", 1.0) == 2.5
    assert coerce_parameter("name", "gaussian", "linear") == "gaussian"
    assert coerce_parameter("depth", "null", None) is None
    assert coerce_parameter("depth", "0.33", None) == 0.33
    assert coerce_parameter("x", 7, 1.0) == 7
    with pytest.raises(ParameterError):
        coerce_parameter("flag", "maybe", False)
    with pytest.raises(ParameterError):
        coerce_parameter("n", "2.5", 1)


def test_resolve_parameters():
    """Test entry parameters win over constructor defaults"""
    entry = TEST_ENTRIES["dam/stoker"]
    parameters = resolve_parameters(entry, DamBreakCase, {"length": "20"})
    assert parameters["h_right"] == 0.001
    assert parameters["length"] == 20.0


def test_listing(test_catalog):
    """Test the listing is sorted and filtered by id"""
    ids = [entry.entry_id for entry in Catalog.listing()]
    assert ids == sorted(TEST_ENTRIES)
    assert [entry.entry_id for entry in Catalog.listing("thacker")] == [
        "thacker/curved-2d",
        "thacker/planar-1d",
    ]
    assert Catalog.listing("nothing") == []


def test_invalid_case_type(mock_catalog):
    """Test factories must build analytic cases"""
    entries = {
        "bad": CatalogEntry("bad", "shallow_bench.definitions.Grid", {}),
        "missing": CatalogEntry("missing", "shallow_bench.cases.steady.NoSuchCase", {}),
    }
    with mock_catalog(DictionaryCatalogMap(entries)):
        with pytest.raises((InvalidCaseType, ParameterError)):
            Catalog.case("bad")
        with pytest.raises(InvalidCaseType):
            Catalog.case("missing")


def test_load_class():
    """Test classes load from fully qualified names"""
    assert load_class(build_fqn(LakeAtRestCase)) is LakeAtRestCase
    with pytest.raises(InvalidCaseType):
        load_class("NoModule")
    with pytest.raises(InvalidCaseType):
        load_class("shallow_bench.no_such_module.Case")


def test_file_locator(tmp_path):
    """Test files are found in the first path holding them"""
    first, second = tmp_path / "first", tmp_path / "second"
    first.mkdir()
    second.mkdir()
    (second / "catalog.json").write_text("{}", encoding="utf-8")
    assert FileLocator.find([first, second], "catalog.json") == second / "catalog.json"
    (first / "catalog.json").write_text("{}", encoding="utf-8")
    assert FileLocator.find([first, second], "catalog.json") == first / "catalog.json"
    absolute = second / "catalog.json"
    assert FileLocator.find([], str(absolute)) == absolute
    with pytest.raises(FileNotFoundError):
        FileLocator.find([first], "other.json")
    with pytest.raises(FileNotFoundError):
        FileLocator.find([first], str(Path(tmp_path) / "absent.json"))


PACKAGED_IDS = [
    entry.entry_id
    for entry in catalog_map_from_json_file(FileLocator.find([PACKAGE_DIR], "catalog.json"))
]


@pytest.mark.parametrize("entry_id", PACKAGED_IDS)
def test_every_entry_generates(entry_id, monkeypatch):
    """Test every packaged entry generates with its defaults on 64 cells"""
    monkeypatch.setattr(Catalog, "_instance", None)
    case = Catalog.case(entry_id)
    n_cells_y = 64 if case.dimension == 2 else None
    profile = case.generate(64, n_cells_y=n_cells_y)
    assert profile.grid.n_cells == 64
    assert profile.time == case.reference_time
    assert np.all(np.isfinite(profile.h)) and np.all(profile.h >= 0)
