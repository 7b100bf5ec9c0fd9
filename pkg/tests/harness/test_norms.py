# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

import math

import numpy as np
import pytest

from shallow_bench.definitions import Grid, SolutionProfile
from shallow_bench.exceptions import ComparisonError, DomainError
from shallow_bench.harness.norms import Norms, convergence_order, error_norms


def _profile(h, u=None, length=1.0, time=0.0) -> SolutionProfile:
    h = np.asarray(h, dtype=float)
    u = np.zeros_like(h) if u is None else np.asarray(u, dtype=float)
    return SolutionProfile(grid=Grid(len(h), length), h=h, u=u, z=np.zeros_like(h), time=time)


def test_norms_of_error_field():
    """Test the cell averaged norms"""
    norms = Norms.of(np.array([3.0, -4.0]))
    assert norms.l1 == 3.5
    assert norms.l2 == pytest.approx(math.sqrt(12.5))
    assert norms.linf == 4.0
    assert norms.to_dict() == {"l1": 3.5, "l2": norms.l2, "linf": 4.0}
    assert Norms.of(np.array([])) == Norms(0.0, 0.0, 0.0)


def test_error_norms():
    """Test depth and discharge errors between two profiles"""
    exact = _profile([1.0, 1.0, 1.0, 1.0], [1.0, 1.0, 1.0, 1.0])
    numerical = _profile([1.0, 1.1, 1.0, 0.9], [1.0, 1.0, 1.0, 1.0])
    norms = error_norms(numerical, exact)
    assert norms.h.l1 == pytest.approx(0.05)
    assert norms.h.linf == pytest.approx(0.1)
    assert norms.q.linf == pytest.approx(0.1)
    assert error_norms(exact, exact).h == Norms(0.0, 0.0, 0.0)


def test_dry_cells_carry_no_error():
    """Test cells dry in both profiles are skipped"""
    exact = _profile([1.0, 0.0])
    numerical = _profile([1.0, 1e-12])
    assert error_norms(numerical, exact).h.linf == 0.0


def test_error_norms_need_matching_profiles():
    """Test grids and times must agree"""
    with pytest.raises(ComparisonError):
        error_norms(_profile([1.0, 1.0]), _profile([1.0, 1.0, 1.0]))
    with pytest.raises(ComparisonError):
        error_norms(_profile([1.0], length=2.0), _profile([1.0]))
    with pytest.raises(ComparisonError, match="t="):
        error_norms(_profile([1.0], time=1.0), _profile([1.0], time=1.5))


def test_convergence_order():
    """Test orders between successive refinements"""
    orders = convergence_order([(10, 1.0), (20, 0.5), (40, 0.0625)])
    assert orders == [pytest.approx(1.0), pytest.approx(3.0)]


def test_convergence_order_is_scale_invariant():
    """Test multiplying every error by a constant keeps the orders"""
    rng = np.random.default_rng(7)
    errors = [(n, float(e)) for n, e in zip([25, 50, 100, 200], rng.uniform(0.01, 1.0, 4))]
    scaled = [(n, 1000.0 * e) for n, e in errors]
    np.testing.assert_allclose(convergence_order(scaled), convergence_order(errors))


def test_exact_results_have_no_order():
    """Test zero errors signal an exact method"""
    assert convergence_order([(10, 0.0), (20, 0.0)]) == [None]
    assert convergence_order([(10, 0.1), (20, 0.0), (40, 0.0)]) == [None, None]


def test_convergence_order_validation():
    """Test malformed sequences are rejected"""
    with pytest.raises(DomainError):
        convergence_order([(10, 1.0)])
    with pytest.raises(DomainError):
        convergence_order([(20, 1.0), (10, 0.5)])
    with pytest.raises(DomainError):
        convergence_order([(10, -1.0), (20, 0.5)])
