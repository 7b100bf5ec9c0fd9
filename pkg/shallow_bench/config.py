# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

"""Classes and functions to create catalog maps from config."""

import dataclasses
import json
import os
import pathlib
import sys
from typing import Any, Callable, Dict, Iterator, Mapping, Optional, Sequence

from shallow_bench import logger
from shallow_bench.definitions import (
    DEFAULT_SETTINGS,
    CatalogEntry,
    CatalogMap,
    CatalogSettings,
    Primitives,
)
from shallow_bench.exceptions import CatalogConfigError, DomainError, EntryNotFound

VERSION = 1
""" Config schema version. """

PROPERTY_IDENTIFIER = "$"
PROPERTY_DEFAULT_SEPARATOR = "="


def _dot_env_file_property(property_name: str) -> Optional[str]:
    """
    Read a property from a .env file in the current directory.

    :param property_name: The name of the property
    :type property_name: str
    :return: the property value, or None if it doesn't exist
    :rtype: str
    """
    dot_env_file = pathlib.Path(".env").absolute()
    if dot_env_file.exists():
        with dot_env_file.open("rt", encoding="utf-8") as file:
            for line in file:
                bits = line.split("=")
                if len(bits) == 2 and bits[0].strip() == property_name:
                    return bits[1].strip()
    return None


def _env_property(property_name: str) -> Optional[str]:
    """
    Read a property from the environment.

    :param property_name: The name of the property
    :type property_name: str
    :return: the property value, or None if it doesn't exist
    :rtype: str
    """
    return os.environ.get(property_name)


def _command_line_property(property_name: str) -> Optional[str]:
    """
    Read a property from the command line args.

    :param property_name: The name of the property
    :type property_name: str
    :return: the property value, or None if it doesn't exist
    :rtype: str
    """
    prop_key = f"--{property_name}="
    for sys_arg in sys.argv:
        if sys_arg.startswith(prop_key):
            return sys_arg.rsplit(prop_key, maxsplit=1)[-1]
    return None


class PropertyResolver:
    """Resolve properties by searching through an ordered list of property providers."""

    def __init__(self, providers: Sequence[Callable[[str], Optional[str]]]) -> None:
        self._providers = providers

    @staticmethod
    def _is_property(property_value: Any) -> bool:
        return isinstance(property_value, str) and property_value.startswith(
            PROPERTY_IDENTIFIER
        )

    def resolve_value(self, property_value: Primitives) -> Primitives:
        """
        Resolves properties into values.

        The initial value could be one of the following:
            value            a hardcoded value
            $VALUE           a property to resolve (mandatory)
            $VALUE=default   a property to resolve with a default
            $VALUE=          a property to resolve with a default of None

        :param property_value: the initial value from the config
        :raises CatalogConfigError: if a mandatory property can't be resolved and there is
            no default
        :return: the resolved value
        """
        if not PropertyResolver._is_property(property_value):
            return property_value
        assert isinstance(property_value, str)
        name = property_value[len(PROPERTY_IDENTIFIER) :]
        default: Optional[str] = None
        default_found = False
        if PROPERTY_DEFAULT_SEPARATOR in name:
            name, default = name.split(PROPERTY_DEFAULT_SEPARATOR, maxsplit=1)
            default_found = True
            if not default:
                default = None
        for provider in self._providers:
            value = provider(name)
            if value:
                # early return if we've resolved a property
                return value
        if not default_found:
            raise CatalogConfigError(
                f"No property value found for {PROPERTY_IDENTIFIER}{name}"
            )
        return default

    def resolve(self, values: Mapping[str, Primitives]) -> Dict[str, Primitives]:
        """
        Resolve every property in a mapping of config values.

        :param values: config values, some of the form $<property name>
        :return: a new mapping with the properties replaced
        """
        return {key: self.resolve_value(value) for key, value in values.items()}


STANDARD_PROPERTY_RESOLVER = PropertyResolver(
    providers=[_command_line_property, _env_property, _dot_env_file_property]
)
"""
Standard property resolver specify priority order of command line args->environment->.env file.
"""


class DictionaryCatalogMap(CatalogMap):
    """A `CatalogMap` implementation sitting on top of a simple dictionary."""

    def __init__(
        self,
        entries: Mapping[str, CatalogEntry],
        settings: CatalogSettings = DEFAULT_SETTINGS,
    ) -> None:
        for entry_id, entry in entries.items():
            if entry.entry_id != entry_id:
                raise CatalogConfigError(
                    f"Entry registered as '{entry_id}' has id '{entry.entry_id}'"
                )
        self._entries = dict(entries)
        self._settings = settings

    def get_by_id(self, entry_id: str) -> CatalogEntry:
        if entry_id not in self._entries:
            raise EntryNotFound(f"Solution '{entry_id}' was not found in the catalog")
        return self._entries[entry_id]

    def __iter__(self) -> Iterator[CatalogEntry]:
        return iter([self._entries[key] for key in sorted(self._entries)])

    @property
    def settings(self) -> CatalogSettings:
        return self._settings


def _coerce_setting(name: str, value: Primitives, target: type) -> Any:
    try:
        if target is int:
            return int(float(value))  # type: ignore[arg-type]
        if target is float:
            return float(value)  # type: ignore[arg-type]
        return str(value)
    except (TypeError, ValueError) as ex:
        raise CatalogConfigError(f"Setting '{name}' has an invalid value {value!r}") from ex


def settings_from_json(json_settings: Mapping[str, Primitives]) -> CatalogSettings:
    """
    Convert the JSON ``settings`` object into `CatalogSettings`.

    Missing settings keep their defaults; properties are resolved first.

    :param json_settings: json representation of the settings
    :raises CatalogConfigError: on unknown or invalid settings
    """
    fields = {field.name: field for field in dataclasses.fields(CatalogSettings)}
    unknown = sorted(set(json_settings) - set(fields))
    if unknown:
        raise CatalogConfigError(f"Unknown catalog settings {unknown}")
    resolved = STANDARD_PROPERTY_RESOLVER.resolve(json_settings)
    values = {
        name: _coerce_setting(name, value, type(getattr(DEFAULT_SETTINGS, name)))
        for name, value in resolved.items()
        if value is not None
    }
    try:
        return CatalogSettings(**values)
    except DomainError as ex:
        raise CatalogConfigError(f"Invalid catalog settings: {ex}") from ex


def catalog_entry_from_json(entry_id: str, json_definition: Mapping) -> CatalogEntry:
    """
    Convert a JSON object defining a `CatalogEntry` into a python object.

    :param entry_id: the solution id
    :param json_definition: json representation
    :returns: a `CatalogEntry`
    :raises CatalogConfigError: if the factory is missing
    """
    if "factory" not in json_definition:
        raise CatalogConfigError(f"Solution '{entry_id}' has no factory")
    return CatalogEntry(
        entry_id=entry_id,
        factory=json_definition["factory"],
        kwargs=STANDARD_PROPERTY_RESOLVER.resolve(json_definition.get("kwargs", {})),
        dimension=int(json_definition.get("dimension", 1)),
        regime=json_definition.get("regime", ""),
        description=json_definition.get("description", ""),
    )


def catalog_map_from_json_dict(config_dict: Mapping) -> CatalogMap:
    """
    Build a catalog map from a JSON dict.

    :param config_dict: json representation of a catalog
    :returns: a python `CatalogMap`
    :raises CatalogConfigError: on a version mismatch or a malformed document
    """
    config_version = config_dict.get("version", 0)
    if config_version != VERSION:
        raise CatalogConfigError(
            f"Incorrect catalog version in config {config_version}, but required {VERSION}"
        )
    if not isinstance(config_dict.get("solutions"), Mapping):
        raise CatalogConfigError("The catalog has no 'solutions' object")

    return DictionaryCatalogMap(
        {
            key: catalog_entry_from_json(key, value)
            for key, value in config_dict["solutions"].items()
        },
        settings_from_json(config_dict.get("settings", {})),
    )


def catalog_map_from_json_file(path_to_json: pathlib.Path) -> CatalogMap:
    """
    Load a JSON file and convert it into a `CatalogMap`.

    :param path_to_json: the path to a valid json file
    :returns: a `CatalogMap` implementation
    :raises CatalogConfigError: if the file is not valid JSON or not a valid catalog
    """
    try:
        with path_to_json.open(encoding="utf-8") as file_pointer:
            logger.info("Reading catalog file", path=str(path_to_json))
            json_dict = json.load(file_pointer)
            return catalog_map_from_json_dict(json_dict)
    except json.JSONDecodeError as ex:
        raise CatalogConfigError(f"Problem with file '{path_to_json}': {ex}") from ex
    except CatalogConfigError as ex:
        raise CatalogConfigError(f"Problem with file '{path_to_json}': {ex}") from ex
