# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

"""Tests for config functions and property resolution."""

import json
import os
import sys
from unittest.mock import patch

import pytest

from shallow_bench.config import (
    STANDARD_PROPERTY_RESOLVER,
    DictionaryCatalogMap,
    catalog_entry_from_json,
    catalog_map_from_json_dict,
    catalog_map_from_json_file,
    settings_from_json,
)
from shallow_bench.definitions import DEFAULT_SETTINGS, CatalogEntry
from shallow_bench.exceptions import CatalogConfigError, EntryNotFound
from shallow_bench.files import PACKAGE_DIR, FileLocator


@pytest.fixture(name="mock_kwargs")
def _mock_kwargs():
    return {
        "key": "value",
        "key1": "$PROPERTY1",
        "key2": "$PROPERTY2",
        "key3": "$PROPERTY3=default_value",
        "key4": "$PROPERTY4=",
        "key5": 2.5,
    }


def test_property_resolver__args(mock_kwargs):
    """Test that properties can be extracted from command line args."""
    testargs = ["--PROPERTY1=testvalue1", "--PROPERTY2=testvalue2"]
    with patch.object(sys, "argv", testargs):
        result = STANDARD_PROPERTY_RESOLVER.resolve(mock_kwargs)
        assert result == {
            "key": "value",
            "key1": "testvalue1",
            "key2": "testvalue2",
            "key3": "default_value",
            "key4": None,
            "key5": 2.5,
        }


def test_property_resolver__env(mock_kwargs):
    """Test that properties can be extracted from environment variables."""
    os.environ["PROPERTY1"] = "envtestvalue1"
    os.environ["PROPERTY2"] = "envtestvalue2"
    os.environ["PROPERTY4"] = "hasavalue"
    try:
        result = STANDARD_PROPERTY_RESOLVER.resolve(mock_kwargs)
        assert result["key1"] == "envtestvalue1"
        assert result["key2"] == "envtestvalue2"
        assert result["key3"] == "default_value"
        assert result["key4"] == "hasavalue"
    finally:
        del os.environ["PROPERTY1"]
        del os.environ["PROPERTY2"]
        del os.environ["PROPERTY4"]


def test_property_resolver__precedence(mock_kwargs):
    """Test the properties are resolved in the correct order."""
    os.environ["PROPERTY1"] = "notused1"
    os.environ["PROPERTY2"] = "envtestvalue2"
    try:
        testargs = ["--PROPERTY1=testvalue1"]
        with patch.object(sys, "argv", testargs):
            result = STANDARD_PROPERTY_RESOLVER.resolve(mock_kwargs)
            assert result["key1"] == "testvalue1"
            assert result["key2"] == "envtestvalue2"
    finally:
        del os.environ["PROPERTY1"]
        del os.environ["PROPERTY2"]


def test_property_resolver__not_found(mock_kwargs):
    """Test that an error is thrown if property values cannot be found."""
    with patch.object(sys, "argv", []):
        with pytest.raises(
            CatalogConfigError, match=r"No property value found for \$PROPERTY1"
        ):
            _ = STANDARD_PROPERTY_RESOLVER.resolve(mock_kwargs)


def test_property_resolver__dot_env(tmp_path, monkeypatch):
    """Test that properties fall back to a .env file in the working directory."""
    (tmp_path / ".env").write_text("BENCH_GRAVITY = 9.5\n", encoding="utf-8")
    monkeypatch.chdir(tmp_path)
    with patch.object(sys, "argv", []):
        assert STANDARD_PROPERTY_RESOLVER.resolve_value("$BENCH_GRAVITY") == "9.5"


def test_dictionary_catalog_map():
    """Test lookups, sorted iteration and id checks."""
    entries = {
        "b": CatalogEntry("b", "module.B", {}),
        "a": CatalogEntry("a", "module.A", {}),
    }
    catalog_map = DictionaryCatalogMap(entries)
    assert [entry.entry_id for entry in catalog_map] == ["a", "b"]
    assert catalog_map.get_by_id("a").factory == "module.A"
    assert catalog_map.settings == DEFAULT_SETTINGS
    with pytest.raises(EntryNotFound):
        catalog_map.get_by_id("c")
    with pytest.raises(CatalogConfigError):
        DictionaryCatalogMap({"a": CatalogEntry("b", "module.B", {})})


def test_settings_from_json():
    """Test settings are coerced and checked."""
    settings = settings_from_json({"gravity": "9.8", "max_steps": "1e4"})
    assert settings.gravity == 9.8
    assert settings.max_steps == 10000
    assert settings.dry_tolerance == DEFAULT_SETTINGS.dry_tolerance
    with pytest.raises(CatalogConfigError):
        settings_from_json({"colour": "blue"})
    with pytest.raises(CatalogConfigError):
        settings_from_json({"gravity": "heavy"})
    with pytest.raises(CatalogConfigError):
        settings_from_json({"max_steps": 0})


def test_catalog_entry_from_json():
    """Test entries carry their factory, kwargs and listing fields."""
    entry = catalog_entry_from_json(
        "dam/ritter",
        {
            "factory": "shallow_bench.cases.transient.DamBreakCase",
            "kwargs": {"model": "ritter", "time": "$DAM_TIME=6"},
            "regime": "transient",
        },
    )
    assert entry.kwargs == {"model": "ritter", "time": "6"}
    assert entry.family == "dam"
    assert entry.dimension == 1
    with pytest.raises(CatalogConfigError):
        catalog_entry_from_json("broken", {"kwargs": {}})


def test_catalog_map_from_json_dict():
    """Test the catalog document version and layout are checked."""
    document = {
        "version": 1,
        "settings": {"steady_threshold": 1e-8},
        "solutions": {"lake": {"factory": "shallow_bench.cases.steady.LakeAtRestCase"}},
    }
    catalog_map = catalog_map_from_json_dict(document)
    assert catalog_map.get_by_id("lake").factory.endswith("LakeAtRestCase")
    assert catalog_map.settings.steady_threshold == 1e-8
    with pytest.raises(CatalogConfigError, match="version"):
        catalog_map_from_json_dict({"version": 2, "solutions": {}})
    with pytest.raises(CatalogConfigError):
        catalog_map_from_json_dict({"version": 1})


def test_catalog_map_from_json_file(tmp_path):
    """Test catalogs load from disk and broken files are reported."""
    good = tmp_path / "catalog.json"
    good.write_text(
        json.dumps({"version": 1, "solutions": {"a": {"factory": "module.A"}}}),
        encoding="utf-8",
    )
    assert [entry.entry_id for entry in catalog_map_from_json_file(good)] == ["a"]
    broken = tmp_path / "broken.json"
    broken.write_text("{ not json", encoding="utf-8")
    with pytest.raises(CatalogConfigError, match="broken.json"):
        catalog_map_from_json_file(broken)


def test_shipped_catalog_is_valid():
    """Test the packaged catalog parses and every entry has a listing regime."""
    catalog_map = catalog_map_from_json_file(FileLocator.find([PACKAGE_DIR], "catalog.json"))
    entries = list(catalog_map)
    assert len(entries) > 20
    assert all(entry.regime for entry in entries)
    assert {entry.family for entry in entries} == {"steady", "gvf", "transient"}
