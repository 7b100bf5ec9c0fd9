# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

import contextlib
from typing import Any, Dict, Generator, Optional

import pytest

from shallow_bench.catalog import Catalog
from shallow_bench.config import DictionaryCatalogMap
from shallow_bench.definitions import CatalogEntry, CatalogMap, CatalogSettings

RECORDING_SETTINGS = CatalogSettings(
    instrumentation="shallow_bench.harness.instrumentation.RecordingInstrument"
)
# settings that keep instrumentation in memory for inspection


def entry(entry_id: str, factory: str, **kwargs: Any) -> CatalogEntry:
    """Catalog entry with the given keyword parameters."""
    return CatalogEntry(
        entry_id=entry_id,
        factory=f"shallow_bench.cases.{factory}",
        kwargs=kwargs,
        dimension=int(kwargs.get("dimension", 1)),
    )


TEST_ENTRIES: Dict[str, CatalogEntry] = {
    e.entry_id: e
    for e in [
        entry("lake/bowl", "steady.LakeAtRestCase", length=25.0, eta=0.5, bed="bowl"),
        entry("lake/island", "steady.LakeAtRestCase", bed="island", height=0.8),
        entry("uniform", "steady.UniformFlowCase"),
        entry("macdonald", "steady.MacDonaldCase"),
        entry("bump", "steady.BumpCase"),
        entry("gvf/M1", "gvf.GvfCase", profile="M1"),
        entry("dam/ritter", "transient.DamBreakCase", model="ritter", time=0.5),
        entry(
            "dam/stoker",
            "transient.DamBreakCase",
            model="stoker",
            h_left=0.005,
            h_right=0.001,
            time=6.0,
        ),
        entry("thacker/planar-1d", "transient.ThackerCase", variant="planar"),
        entry(
            "thacker/curved-2d",
            "transient.ThackerCase",
            dimension=2,
            variant="curved",
            amplitude=0.2,
        ),
    ]
}
# a small catalog covering every case family


@pytest.fixture(name="mock_catalog")
def create_mock_catalog():
    """
    Create a test `Catalog`.

    The catalog is configured from the provided map and forgotten once it is finished with,
    so the next caller loads the catalog file again.
    """

    @contextlib.contextmanager
    def _f(
        catalog_map: Optional[CatalogMap] = None,
    ) -> Generator[Catalog, None, None]:
        catalog = Catalog.configure(
            catalog_map or DictionaryCatalogMap(TEST_ENTRIES, RECORDING_SETTINGS)
        )
        try:
            yield catalog
        finally:
            # unload the catalog to remove any caching and config
            Catalog._instance = None

    return _f


@pytest.fixture(name="test_catalog")
def _test_catalog(mock_catalog):
    with mock_catalog() as catalog:
        yield catalog
