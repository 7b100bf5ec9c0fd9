# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

"""Tests for helper functions."""

import json
import math

import numpy as np

from shallow_bench.definitions import FrictionFamily
from shallow_bench.utils.helpers import flatten_dict, format_number, to_primitive


def test_flatten_dict():
    """Test nested mappings flatten into dotted keys"""
    nested = {"a": 1, "b": {"c": 2, "d": {"e": 3}}, "f": {}, "g": [1, 2]}
    assert flatten_dict(nested) == {"a": 1, "b.c": 2, "b.d.e": 3, "f": {}, "g": [1, 2]}
    assert flatten_dict(5, prefix="x") == {"x": 5}


def test_to_primitive():
    """Test enums, arrays and numpy scalars become JSON values"""
    value = {
        "family": FrictionFamily.MANNING,
        "h": np.array([1.0, 2.0]),
        "n": np.int64(3),
        "pair": (np.float64(0.5), math.inf),
        1: None,
    }
    primitive = to_primitive(value)
    assert primitive == {
        "family": "manning",
        "h": [1.0, 2.0],
        "n": 3,
        "pair": [0.5, None],
        "1": None,
    }
    # the result must be serializable as strict JSON
    json.dumps(primitive, allow_nan=False)


def test_format_number():
    """Test numbers are written as their shortest round-trip decimal"""
    for value in (0.1, 1.0 / 3.0, 2.0**-40, 6.02214076e23, -0.0, np.float64(9.81)):
        text = format_number(value)
        assert float(text) == value
    assert format_number(0.1) == "0.1"
    assert format_number(3) == "3.0"
