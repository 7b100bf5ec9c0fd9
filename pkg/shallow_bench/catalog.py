# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

"""Solution catalog registry with a thread local cache of instantiated cases."""

import inspect
import json
import os
import threading
from typing import Any, Dict, List, Mapping, Optional

from shallow_bench import logger
from shallow_bench.cases.interfaces import AnalyticCase
from shallow_bench.config import catalog_map_from_json_file
from shallow_bench.definitions import CatalogEntry, CatalogMap, CatalogSettings
from shallow_bench.exceptions import InvalidCaseType, ParameterError
from shallow_bench.files import CATALOG_SEARCH_PATH, FileLocator
from shallow_bench.harness.interfaces import Instrumentation
from shallow_bench.instantiator import instantiate, load_class

# Filename for the catalog config
CATALOG_CONFIG = os.environ.get("SHALLOW_BENCH_CATALOG", "catalog.json")

_RESERVED = ("self", "settings")
# constructor arguments that are not case parameters


def _constructor_defaults(clz: type) -> Dict[str, Any]:
    signature = inspect.signature(clz)
    return {
        name: parameter.default
        for name, parameter in signature.parameters.items()
        if name not in _RESERVED
        and parameter.kind in (parameter.POSITIONAL_OR_KEYWORD, parameter.KEYWORD_ONLY)
    }


def coerce_parameter(name: str, value: Any, default: Any) -> Any:
    """
    Convert an override to the type of the parameter default.

    Strings from the command line are parsed: ``true``/``false`` for booleans, numbers for
    numeric parameters and JSON for parameters whose default is null or a list. Values that
    are not strings are used as they are.

    :param name: the parameter name, for messages
    :param value: the override
    :param default: the default value of the parameter
    :raises ParameterError: if the value cannot be converted
    """
    if not isinstance(value, str):
        return value
    try:
        if isinstance(default, bool):
            lowered = value.strip().lower()
            if lowered not in ("true", "false"):
                raise ValueError(f"expected true or false, got '{value}'")
            return lowered == "true"
        if isinstance(default, int):
            return int(value)
        if isinstance(default, float):
            return float(value)
        if isinstance(default, str):
            return value
        return json.loads(value)
    except ValueError as ex:
        raise ParameterError(f"Invalid value for parameter '{name}': {ex}") from ex


def resolve_parameters(
    entry: CatalogEntry, clz: type, overrides: Optional[Mapping[str, Any]] = None
) -> Dict[str, Any]:
    """
    Merge the entry parameters with overrides.

    A parameter is known when the entry sets it or the case constructor accepts it.

    :param entry: the catalog entry
    :param clz: the case class of the entry
    :param overrides: values replacing the entry parameters
    :raises ParameterError: for unknown parameters or values of the wrong type
    """
    defaults = _constructor_defaults(clz)
    defaults.update(entry.kwargs)
    unknown = sorted(set(overrides or {}) - set(defaults))
    if unknown:
        raise ParameterError(
            f"Unknown parameters {unknown} for '{entry.entry_id}', "
            f"expected some of {sorted(defaults)}"
        )
    parameters = dict(entry.kwargs)
    for name, value in (overrides or {}).items():
        parameters[name] = coerce_parameter(name, value, defaults[name])
    return parameters


class Catalog:
    """
    Solution catalog registry with a thread local cache of cases.

    This class is a singleton configured lazily from the catalog file. Cases built with
    their entry parameters are instantiated once per thread; cases built with overrides
    are always new.
    """

    _instance: Optional["Catalog"] = None
    # Singleton instance
    _cache = None
    # thread local cache
    _catalog_map: CatalogMap

    def __new__(cls, catalog_map: CatalogMap) -> "Catalog":
        if cls._instance is None:
            cls._instance = super(Catalog, cls).__new__(cls)
            cls._instance._cache = threading.local()
            cls._instance._catalog_map = catalog_map
        return cls._instance

    @staticmethod
    def __instance() -> "Catalog":
        """Singleton factory method."""
        if Catalog._instance is None:
            logger.info("Creating Catalog instance", config=CATALOG_CONFIG)
            path = FileLocator.find(CATALOG_SEARCH_PATH, CATALOG_CONFIG)
            Catalog._instance = Catalog(catalog_map_from_json_file(path))
        return Catalog._instance

    @staticmethod
    def configure(catalog_map: CatalogMap) -> "Catalog":
        """
        Manual configure method.

        Must be called before any other Catalog methods to configure the catalog in code.

        :param catalog_map: the catalog map to use
        :returns: Catalog instance
        """
        if Catalog._instance is not None:
            logger.warning("Catalog already configured.  Reconfiguration occurring.")
        Catalog._instance = None
        Catalog._instance = Catalog(catalog_map)
        return Catalog._instance

    def _instantiate(self, entry: CatalogEntry, parameters: Mapping[str, Any]) -> AnalyticCase:
        logger.info("Instantiating case", entry_id=entry.entry_id, factory=entry.factory)
        clz = load_class(entry.factory)
        try:
            case = instantiate(clz, settings=self._catalog_map.settings, **parameters)
        except TypeError as ex:
            raise ParameterError(f"Cannot build '{entry.entry_id}': {ex}") from ex
        if not isinstance(case, AnalyticCase):
            raise InvalidCaseType(f"{entry.factory} does not implement AnalyticCase")
        return case

    def get_case(
        self, entry_id: str, overrides: Optional[Mapping[str, Any]] = None
    ) -> AnalyticCase:
        """
        Instantiate a case by id.

        :param entry_id: the catalog id
        :param overrides: parameter values replacing the entry parameters
        :raises EntryNotFound: for an unknown id
        :raises ParameterError: for unknown or invalid parameters
        """
        entry = self._catalog_map.get_by_id(entry_id)
        if overrides:
            parameters = resolve_parameters(entry, load_class(entry.factory), overrides)
            return self._instantiate(entry, parameters)
        cases: Dict[str, AnalyticCase] = getattr(self._cache, "cases", None) or {}
        if entry_id not in cases:
            cases[entry_id] = self._instantiate(entry, entry.kwargs)
            setattr(self._cache, "cases", cases)
        return cases[entry_id]

    def get_instrumentation(self) -> Instrumentation:
        """The instrument named by the catalog settings, one per thread."""
        entry = getattr(self._cache, "instrumentation", None)
        if entry is None:
            fqn = self._catalog_map.settings.instrumentation
            entry = instantiate(load_class(fqn))
            if not isinstance(entry, Instrumentation):
                raise InvalidCaseType(f"{fqn} does not implement Instrumentation")
            setattr(self._cache, "instrumentation", entry)
        return entry

    @property
    def entries(self) -> CatalogMap:
        return self._catalog_map

    @staticmethod
    def case(entry_id: str, overrides: Optional[Mapping[str, Any]] = None) -> AnalyticCase:
        """
        Static method for retrieving cases by id.

        :param entry_id: the catalog id
        :param overrides: parameter values replacing the entry parameters
        """
        return Catalog.__instance().get_case(entry_id, overrides)

    @staticmethod
    def catalog_map() -> CatalogMap:
        return Catalog.__instance().entries

    @staticmethod
    def settings() -> CatalogSettings:
        return Catalog.__instance().entries.settings

    @staticmethod
    def listing(text_filter: str = "") -> List[CatalogEntry]:
        """
        Catalog entries whose id contains ``text_filter``, sorted by id.

        :param text_filter: substring of the ids to keep, everything when empty
        """
        entries = Catalog.__instance().entries
        return [entry for entry in entries if text_filter in entry.entry_id]

    @staticmethod
    def instrumentation() -> Instrumentation:
        return Catalog.__instance().get_instrumentation()
