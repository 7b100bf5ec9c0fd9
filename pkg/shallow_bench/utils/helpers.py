# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

"""Generic useful stuff."""

import enum
import math
from typing import Any, Dict, Mapping

import numpy as np


def flatten_dict(a_dict: Any, separator: str = ".", prefix: str = "") -> Dict[str, Any]:
    """Flatten nested mappings into dotted keys."""
    if not isinstance(a_dict, Mapping):
        return {prefix: a_dict}
    flat: Dict[str, Any] = {}
    for key, value in a_dict.items():
        name = f"{prefix}{separator}{key}" if prefix else str(key)
        if isinstance(value, Mapping) and value:
            flat.update(flatten_dict(value, separator, name))
        else:
            flat[name] = value
    return flat


def to_primitive(value: Any) -> Any:
    """
    Convert enums, numpy values and containers into JSON serializable values.

    Non-finite floats become ``None``.
    """
    if isinstance(value, enum.Enum):
        return to_primitive(value.value)
    if isinstance(value, Mapping):
        return {str(key): to_primitive(item) for key, item in value.items()}
    if isinstance(value, np.ndarray):
        return [to_primitive(item) for item in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [to_primitive(item) for item in value]
    if isinstance(value, np.generic):
        return to_primitive(value.item())
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def format_number(value: Any) -> str:
    """Shortest decimal that reads back as the same 64-bit float."""
    return repr(float(value))
