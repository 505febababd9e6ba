import math

import numpy as np
import pytest

from lateration.errors import DegenerateQuadric
from lateration.quadric import (
    QuadricClass,
    classify_focal,
    join_coeffs,
    monomial_rows,
    recover_focal_parameters,
    sample_sheet,
    second_focus,
    split_coeffs,
)

from builders import focal_config
from fixtures import FIVE_CONIC, FIVE_SATS
from oracles import monomials


def test_cone_example():
    q = classify_focal([0, 0, math.sqrt(2)], 0.0, [0, 0, 0])
    assert q.klass is QuadricClass.CONE
    assert q.eccentricity == pytest.approx(math.sqrt(2)) and q.semilatus == 0
    assert q.semi_axes[0] == pytest.approx(1.0)
    assert second_focus(q) is None


def test_five_example():
    q = classify_focal([0, 5 / 3], 9.0, [0, 15])
    assert q.klass is QuadricClass.TWO_SHEET_HYPERBOLOID
    assert q.semilatus == pytest.approx(16)
    assert q.semi_axes == pytest.approx((9, 12))
    f2, d = second_focus(q)
    assert np.allclose(f2, [0, -15]) and d == pytest.approx(18)
    # every satellite of the example lies on Q+
    assert np.max(np.abs(q.sheet_excess(FIVE_SATS))) < 1e-12


def test_seven_second_focus():
    q = classify_focal([0, 0, 5 / 3], 9.0, [0, 0, 15])
    f2, d = second_focus(q)
    assert np.allclose(f2, [0, 0, -15]) and d == pytest.approx(18)


def test_sphere_and_paraboloid():
    q = classify_focal([0, 0], -1.0, [0, 0])
    assert q.klass is QuadricClass.SPHERE and q.semi_axes == (1.0, 1.0)
    f2, d = second_focus(q)
    assert np.allclose(f2, 0) and d == 2.0
    q = classify_focal([1, 0], -0.25, [0, 0])
    assert q.klass is QuadricClass.PARABOLOID and q.semi_axes[0] == pytest.approx(0.5)
    assert second_focus(q) is None


def test_spheroid_axes():
    q = classify_focal([0.5, 0], -0.75, [0, 0])
    assert q.klass is QuadricClass.PROLATE_SPHEROID
    assert q.semi_axes == pytest.approx((1.0, 0.75 / math.sqrt(0.75)))


@pytest.mark.parametrize("u,alpha", [([0, 0], 0.0), ([0.5, 0], 0.0), ([1, 0], 0.0)])
def test_degenerate(u, alpha):
    with pytest.raises(DegenerateQuadric):
        classify_focal(u, alpha, [0, 0])


def test_sign_swap_swaps_sheets(rng):
    for kind in ("spheroid", "hyperboloid", "paraboloid"):
        x, sats, q = focal_config(rng, 3, 6, kind)
        p = classify_focal(-q.scaled_normal, -q.offset, q.focus)
        assert p.klass is q.klass and p.semi_axes == pytest.approx(q.semi_axes)
        assert np.all(p.directrix_value(sats) < 0) and np.all(q.directrix_value(sats) > 0)


@pytest.mark.parametrize("kind", ["sphere", "spheroid", "hyperboloid", "cone", "paraboloid"])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_sheet_round_trip(rng, kind, n):
    for _ in range(5):
        _, sats, q = focal_config(rng, n, 20, kind)
        assert np.max(np.abs(q.sheet_excess(sats))) <= 1e-9 * 5
        if q.klass is not QuadricClass.SPHERE:
            assert np.all(q.directrix_value(sats) >= -1e-12)


def test_hyperboloid_focal_difference(rng):
    for _ in range(10):
        _, sats, q = focal_config(rng, 3, 20, "hyperboloid")
        f2, d = second_focus(q)
        diff = np.linalg.norm(sats - q.focus, axis=1) - np.linalg.norm(sats - f2, axis=1)
        assert np.allclose(np.abs(diff), d) and (np.all(diff > 0) or np.all(diff < 0))


def test_spheroid_focal_sum(rng):
    for _ in range(10):
        _, sats, q = focal_config(rng, 3, 20, "spheroid")
        f2, d = second_focus(q)
        total = np.linalg.norm(sats - q.focus, axis=1) + np.linalg.norm(sats - f2, axis=1)
        assert np.allclose(total, d)


def test_monomial_order():
    assert np.allclose(monomial_rows([[2, 3]]), [[1, 2, 3, 4, 9, 6]])
    assert np.allclose(monomial_rows([[1, 0, 0]]), [[1, 1, 0, 0, 1, 0, 0, 0, 0, 0]])
    p = [0.3, -1.2, 2.0, 0.7]
    assert np.allclose(monomial_rows([p])[0], monomials(p))


def test_split_join(rng):
    c = rng.standard_normal(10)
    c0, L, S = split_coeffs(c, 3)
    assert np.allclose(join_coeffs(c0, L, S), c)
    P = rng.standard_normal(3)
    assert monomial_rows([P])[0] @ c == pytest.approx(c0 + L @ P + P @ S @ P)


def test_coefficients_vanish_on_quadric(rng):
    _, sats, q = focal_config(rng, 3, 10, "hyperboloid")
    assert np.max(np.abs(monomial_rows(sats) @ q.coefficients())) < 1e-10


def test_recover_circle():
    (q,) = recover_focal_parameters([-1, 0, 0, 1, 1, 0], 2)
    assert q.klass is QuadricClass.SPHERE and np.allclose(q.focus, 0)
    assert abs(q.semilatus) == pytest.approx(1.0)


def test_recover_hyperbola():
    cands = recover_focal_parameters(FIVE_CONIC, 2)
    foci = sorted(tuple(np.round(q.focus, 9)) for q in cands)
    assert foci == [(0, -15), (0, 15)]
    for q in cands:
        assert q.klass is QuadricClass.TWO_SHEET_HYPERBOLOID
        assert q.eccentricity == pytest.approx(5 / 3)


def test_recover_ellipse_candidates_satisfy_identity():
    cands = recover_focal_parameters([-1, 0, 0, 1, 2, 0], 2)
    th = np.linspace(0, 2 * np.pi, 20, endpoint=False)
    pts = np.c_[np.cos(th), np.sin(th) / math.sqrt(2)]
    assert len(cands) == 2
    for q in cands:
        lhs = np.linalg.norm(pts - q.focus, axis=1)
        assert np.allclose(lhs, np.abs(q.directrix_value(pts)))


def test_recover_not_focal():
    # an ellipsoid with three distinct axes has no focal form
    assert recover_focal_parameters([-1, 0, 0, 0, 1, 2, 3, 0, 0, 0], 3) == []
    # a hyperbola x^2 - y^2 = 1 is not a surface of revolution about a focus in 3-D
    assert recover_focal_parameters([-1, 0, 0, 0, 1, -1, 0, 0, 0, 0], 3) == []


@pytest.mark.parametrize("kind", ["sphere", "spheroid", "hyperboloid", "cone", "paraboloid"])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_recover_round_trip(rng, kind, n):
    for _ in range(5):
        _, _, q = focal_config(rng, n, n + 1, kind)
        c = q.coefficients() * rng.uniform(-3, 3)
        cands = recover_focal_parameters(c, n)
        assert min(np.linalg.norm(p.focus - q.focus) for p in cands) <= 1e-6


def test_sample_other_sheet(rng):
    _, _, q = focal_config(rng, 2, 3, "hyperboloid")
    P = sample_sheet(q, 10, rng, sign=-1)
    assert np.all(q.directrix_value(P) < 0)
    assert np.allclose(np.linalg.norm(P - q.focus, axis=1), -q.directrix_value(P))
