import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lateration.errors import NoSolution
from lateration.model import GroundTruth, Scenario, synthesize_times
from lateration.quadric import QuadricClass
from lateration.solver import Branch, quadratic_roots, reduce, solve

from builders import focal_config
from fixtures import (
    CONE_SATS, CONE_TIMES, FIVE_OTHER, FIVE_SATS, FIVE_TIMES, FIVE_USER,
    SEVEN_OTHER, SEVEN_SATS, SEVEN_TIMES, SEVEN_USER,
)


def _has(report, t, x, tol):
    return any(abs(s.bias - t) <= tol and np.linalg.norm(s.user - x) <= tol for s in report.solutions)


def test_cone_example():
    r = solve(Scenario(3, CONE_SATS, CONE_TIMES))
    assert r.branch is Branch.RANK_DEFICIENT and r.rank_A == 4
    assert len(r.solutions) == 1
    assert np.linalg.norm(r.solutions[0].user) <= 1e-9 and abs(r.solutions[0].bias) <= 1e-9
    red = r.reduction
    assert np.allclose(red.u, [0, 0, math.sqrt(2)], atol=1e-9)
    assert abs(red.alpha) <= 1e-9 and abs(red.beta) <= 1e-9 and np.linalg.norm(red.v) <= 1e-9
    assert r.normalized_discriminant <= 1e-12
    assert r.quadric.klass is QuadricClass.CONE


def test_five_example():
    r = solve(Scenario(2, FIVE_SATS, FIVE_TIMES))
    assert len(r.solutions) == 2
    assert _has(r, 0, FIVE_USER, 1e-8) and _has(r, -18, FIVE_OTHER, 1e-8)
    assert abs(r.quadric.eccentricity - 5 / 3) <= 1e-9
    assert r.to_json()["quadric"]["sheet_distance"] == pytest.approx(18, abs=1e-8)


def test_seven_example():
    r = solve(Scenario(3, SEVEN_SATS, SEVEN_TIMES))
    assert len(r.solutions) == 2
    assert _has(r, 0, SEVEN_USER, 1e-8) and _has(r, -18, SEVEN_OTHER, 1e-8)


def test_sphere_rejects_late_root():
    th = np.array([0.1, 1.7, 2.9, 4.4])
    sats = np.c_[np.cos(th), np.sin(th)]
    r = solve(Scenario(2, sats, np.ones(4)))
    assert len(r.solutions) == 1 and _has(r, 0, [0, 0], 1e-9)
    assert len(r.rejected) == 1 and abs(r.rejected[0].bias - 2.0) < 1e-9
    assert r.quadric.klass is QuadricClass.SPHERE


def test_full_rank_branch(rng):
    sats = rng.uniform(-1, 1, (6, 2))
    s = synthesize_times(sats, GroundTruth(np.array([0.2, -0.4]), 0.3))
    r = solve(s)
    assert r.branch is Branch.FULL_RANK and len(r.solutions) == 1
    assert _has(r, 0.3, [0.2, -0.4], 1e-10)


@pytest.mark.parametrize("kind,count", [
    ("sphere", 1), ("spheroid", 1), ("paraboloid", 1), ("cone", 1), ("hyperboloid", 2),
])
@pytest.mark.parametrize("n", [2, 3])
def test_quadric_cases(rng, kind, count, n):
    for _ in range(10):
        x, sats, _ = focal_config(rng, n, n + 3, kind)
        t = rng.uniform(-1, 1)
        r = solve(synthesize_times(sats, GroundTruth(x, t)))
        assert r.branch is Branch.RANK_DEFICIENT
        assert len(r.solutions) == count
        assert _has(r, t, x, 1e-7)
        if kind == "paraboloid":
            assert r.discriminant is None


def test_discriminant_invariant_under_bias_shift():
    s = Scenario(2, FIVE_SATS, FIVE_TIMES)
    d0 = solve(s).discriminant
    for dt in (-3.0, 0.5, 7.0):
        assert solve(s.shifted(dt)).discriminant == pytest.approx(d0, rel=1e-9)
        assert reduce(s.shifted(dt)).alpha == pytest.approx(reduce(s).alpha - dt)


def test_inconsistent_times():
    sats = np.array([[0, 0], [1, 0], [0, 1]], float)
    with pytest.raises(NoSolution):
        solve(Scenario(2, sats, [0.0, 10.0, 0.0]))


def test_quadratic_roots():
    roots, _ = quadratic_roots(1.0, -3.0, 2.0, 1.0)
    assert roots == pytest.approx([2.0, 1.0])
    roots, _ = quadratic_roots(1.0, 0.0, 1.0, 1.0)
    assert roots == []
    roots, _ = quadratic_roots(1.0, -2.0, 1.0, 1.0)
    assert roots == pytest.approx([1.0])
    roots, _ = quadratic_roots(1e-20, 2.0, -4.0, 1.0, linear=True)
    assert roots == pytest.approx([2.0])


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 4), st.integers(0, 3), st.integers(0, 2**32 - 1))
def test_round_trip(n, extra, seed):
    rng = np.random.default_rng(seed)
    m = n + 1 + extra
    sats = rng.uniform(-1, 1, (m, n))
    x, t = rng.uniform(-1, 1, n), rng.uniform(-1, 1)
    s = synthesize_times(sats, GroundTruth(x, t))
    r = solve(s)
    assert 1 <= len(r.solutions) <= 2
    assert _has(r, t, x, 1e-7)
    for sol in r.solutions:
        assert sol.residual <= 1e-6
        assert np.all(sol.bias <= s.times + 1e-9)
    # translation and scaling move the solutions along
    c, k = rng.uniform(-5, 5, n), rng.uniform(0.1, 10)
    r2 = solve(Scenario(n, k * sats + c, k * s.times))
    assert _has(r2, k * t, k * x + c, 1e-6 * k)
