# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

"""Reusable functions for dynamically loading and instantiating classes."""

import importlib
from typing import Any, Type, TypeVar

from shallow_bench.exceptions import InvalidCaseType

InstanceT = TypeVar("InstanceT")


def load_class(fqn: str) -> Type:
    """
    Load a class using the fully qualified name.

    :param fqn: the fully qualified name of the class to load
    :returns: the loaded class
    :raises InvalidCaseType: if the module or the class cannot be found
    """
    module_name, _, class_name = fqn.rpartition(".")
    if not module_name:
        raise InvalidCaseType(f"'{fqn}' is not a fully qualified class name")
    try:
        module = importlib.import_module(module_name)
    except ImportError as ex:
        raise InvalidCaseType(f"Cannot import module '{module_name}': {ex}") from ex
    clz = getattr(module, class_name, None)
    if not isinstance(clz, type):
        raise InvalidCaseType(f"Module '{module_name}' has no class '{class_name}'")
    return clz


def instantiate(clz: Type[InstanceT], *args: Any, **kwargs: Any) -> InstanceT:
    """
    Instantiate a given class.

    :param clz: the class to instantiate
    :param args: the args to pass to the constructor
    :param kwargs: the kwargs to pass to the constructor
    """
    return clz(*args, **kwargs)


def build_fqn(clz: Type) -> str:
    """
    Get the fully qualified name of a given class.

    :param clz: the class to retrieve the fqn from
    """
    return clz.__module__ + "." + clz.__name__
