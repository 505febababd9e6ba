"""Quadrics with a focus.

A point set ``{P : |P - F| = |<u, P> - alpha|}`` is a quadric of revolution
with focus ``F``; ``|u|`` is its eccentricity and ``|<u, F> - alpha|`` its
semilatus rectum.  The two halves ``Q+`` / ``Q-`` (sign of ``<u,P> - alpha``)
are its sheets.

Coefficient vectors of general quadrics use the monomial order
``(1, x_1..x_n, x_1^2..x_n^2, x_1 x_2, x_1 x_3, ..., x_{n-1} x_n)``.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateQuadric, DegenerateSampling
from .numkernel import DEFAULT_TOL, Tolerance, sym_eigen


class QuadricClass(enum.Enum):
    SPHERE = "SPHERE"
    PROLATE_SPHEROID = "PROLATE_SPHEROID"
    TWO_SHEET_HYPERBOLOID = "TWO_SHEET_HYPERBOLOID"
    CONE = "CONE"
    PARABOLOID = "PARABOLOID"


@dataclass(frozen=True)
class FocalQuadric:
    focus: np.ndarray
    scaled_normal: np.ndarray
    offset: float
    semilatus: float  # signed: <u, F> - alpha
    klass: QuadricClass
    semi_axes: tuple[float, float | None]

    @property
    def eccentricity(self) -> float:
        return float(np.linalg.norm(self.scaled_normal))

    @property
    def n(self) -> int:
        return self.focus.shape[0]

    def sheet_excess(self, P) -> np.ndarray:
        """``|P - F| - (<u, P> - alpha)``; zero exactly on ``Q+``."""
        P = np.atleast_2d(np.asarray(P, dtype=float))
        return np.linalg.norm(P - self.focus, axis=1) - (P @ self.scaled_normal - self.offset)

    def directrix_value(self, P) -> np.ndarray:
        """``<u, P> - alpha``; its sign tells which sheet a point of Q is on."""
        P = np.atleast_2d(np.asarray(P, dtype=float))
        return P @ self.scaled_normal - self.offset

    def coefficients(self) -> np.ndarray:
        """Coefficient vector of ``|P - F|^2 - (<u, P> - alpha)^2``."""
        F, u, a = self.focus, self.scaled_normal, self.offset
        S = np.eye(self.n) - np.outer(u, u)
        L = -2.0 * F + 2.0 * a * u
        c0 = F @ F - a * a
        return join_coeffs(c0, L, S)

    def flipped(self) -> "FocalQuadric":
        """Same point set with ``Q+`` and ``Q-`` swapped."""
        return FocalQuadric(
            self.focus, -self.scaled_normal, -self.offset, -self.semilatus,
            self.klass, self.semi_axes,
        )

    def to_json(self) -> dict:
        a, b = self.semi_axes
        return {
            "class": self.klass.value,
            "focus": self.focus.tolist(),
            "scaled_normal": self.scaled_normal.tolist(),
            "offset": self.offset,
            "eccentricity": self.eccentricity,
            "semilatus": self.semilatus,
            "semi_axes": [a, b],
        }


def classify_focal(u, alpha, focus, tol: Tolerance = DEFAULT_TOL, scale: float = 1.0) -> FocalQuadric:
    """Build and classify the quadric ``|P - F| = |<u, P> - alpha|``.

    ``scale`` is the length used to normalise the semilatus rectum before it
    is compared with ``tol.class_abs``.
    """
    u = np.asarray(u, dtype=float).reshape(-1)
    F = np.asarray(focus, dtype=float).reshape(-1)
    alpha = float(alpha)
    e = float(np.linalg.norm(u))
    l = float(u @ F - alpha)
    al = abs(l)
    flat = al <= tol.class_abs * scale
    eps = tol.class_abs

    if e <= eps:
        if flat:
            raise DegenerateQuadric("sphere of zero radius")
        klass, axes = QuadricClass.SPHERE, (al, al)
    elif abs(e - 1.0) <= eps:
        if flat:
            raise DegenerateQuadric("paraboloid with zero semilatus rectum is a ray")
        klass, axes = QuadricClass.PARABOLOID, (math.sqrt(al), None)
    elif e < 1.0:
        if flat:
            raise DegenerateQuadric("spheroid with zero semilatus rectum is a point")
        k = 1.0 - e * e
        klass, axes = QuadricClass.PROLATE_SPHEROID, (al / k, al / math.sqrt(k))
    elif flat:
        klass, axes = QuadricClass.CONE, (math.sqrt(e * e - 1.0), None)
    else:
        k = e * e - 1.0
        klass, axes = QuadricClass.TWO_SHEET_HYPERBOLOID, (al / k, al / math.sqrt(k))
    return FocalQuadric(F, u, alpha, l, klass, axes)


def second_focus(q: FocalQuadric) -> tuple[np.ndarray, float] | None:
    """The other focus and the distance between the vertices.

    For a hyperboloid the vertex distance is the gap between the two sheets.
    A sphere returns its own centre and its diameter; cones and paraboloids
    have a single focus and return ``None``.
    """
    if q.klass is QuadricClass.SPHERE:
        return q.focus.copy(), 2.0 * abs(q.semilatus)
    if q.klass not in (QuadricClass.PROLATE_SPHEROID, QuadricClass.TWO_SHEET_HYPERBOLOID):
        return None
    e = q.eccentricity
    k = 1.0 - e * e
    axis = q.scaled_normal / e
    focus2 = q.focus + 2.0 * (e * q.semilatus / k) * axis
    return focus2, 2.0 * abs(q.semilatus) / abs(k)


# -- coefficient vectors ---------------------------------------------------

def num_monomials(n: int) -> int:
    return (n + 2) * (n + 1) // 2


def monomial_rows(points) -> np.ndarray:
    """Evaluate all monomials of degree <= 2 at each point (rows)."""
    P = np.atleast_2d(np.asarray(points, dtype=float))
    n = P.shape[1]
    cross = [P[:, j] * P[:, k] for j, k in itertools.combinations(range(n), 2)]
    cols = [np.ones(len(P))] + [P[:, j] for j in range(n)] + [P[:, j] ** 2 for j in range(n)] + cross
    return np.column_stack(cols)


def split_coeffs(c, n: int) -> tuple[float, np.ndarray, np.ndarray]:
    """Constant term, linear part and symmetric quadratic-part matrix."""
    c = np.asarray(c, dtype=float)
    if c.shape != (num_monomials(n),):
        raise ValueError(f"expected {num_monomials(n)} coefficients for n={n}")
    L = c[1 : n + 1].copy()
    S = np.diag(c[n + 1 : 2 * n + 1])
    for c_jk, (j, k) in zip(c[2 * n + 1 :], itertools.combinations(range(n), 2)):
        S[j, k] = S[k, j] = 0.5 * c_jk
    return float(c[0]), L, S


def join_coeffs(c0: float, L, S) -> np.ndarray:
    n = len(L)
    cross = [2.0 * S[j, k] for j, k in itertools.combinations(range(n), 2)]
    return np.concatenate([[c0], L, np.diag(S), cross])


def _axis_candidates(w: np.ndarray, cluster_tol: float):
    """(lambda, distinct eigenvalue index) pairs for which the other n-1
    eigenvalues agree with lambda."""
    n = len(w)
    mag = max(np.max(np.abs(w)), 1e-300)
    if np.ptp(w) <= cluster_tol * mag:
        return [(float(np.mean(w)), None)]
    out = []
    for k in (0, n - 1):
        rest = np.delete(w, k)
        if np.ptp(rest) <= cluster_tol * mag:
            out.append((float(np.mean(rest)), k))
    return out


def recover_focal_parameters(
    coeffs, n: int, tol: Tolerance = DEFAULT_TOL, scale: float | None = None
) -> list[FocalQuadric]:
    """Express a general quadric as a quadric with a focus, if possible.

    The quadric part must be proportional to ``I - u u^T``.  For every
    admissible axis, the offset ``alpha`` solves a scalar quadratic and each
    real root yields one focus.  Degenerate results and candidates whose
    coefficients do not reproduce the input (up to scale) are dropped.
    """
    c = np.asarray(coeffs, dtype=float)
    if not np.any(c):
        raise ValueError("coefficient vector is zero")
    c0, L, S = split_coeffs(c, n)
    w, V = sym_eigen(S, tol)
    cluster_tol = math.sqrt(tol.class_abs)
    c_unit = c / np.linalg.norm(c)

    found: list[FocalQuadric] = []
    for lam, k in _axis_candidates(w, cluster_tol):
        if abs(lam) <= cluster_tol * max(np.max(np.abs(w)), 1e-300):
            continue
        if k is None:
            e2, axis = 0.0, np.zeros(n)
        else:
            e2 = 1.0 - w[k] / lam
            if e2 < -cluster_tol:
                continue
            e2 = max(e2, 0.0)
            axis = V[:, k]
        u = math.sqrt(e2) * axis
        Lp, c0p = L / lam, c0 / lam
        # F = alpha*u - L'/2 and |F|^2 - alpha^2 = c0'
        qa, qb, qc = e2 - 1.0, -float(u @ Lp), float(Lp @ Lp) / 4.0 - c0p
        if abs(qa) <= tol.class_abs:
            alphas = [] if qb == 0 else [-qc / qb]
        else:
            disc = qb * qb - 4.0 * qa * qc
            if disc < -cluster_tol * max(qb * qb, abs(4.0 * qa * qc), 1e-300):
                continue
            r = math.sqrt(max(disc, 0.0))
            alphas = [(-qb + r) / (2 * qa), (-qb - r) / (2 * qa)]
        for alpha in alphas:
            F = alpha * u - Lp / 2.0
            s = scale if scale is not None else max(1.0, float(np.linalg.norm(F)))
            try:
                q = classify_focal(u, alpha, F, tol, s)
            except DegenerateQuadric:
                continue
            rc = q.coefficients()
            rc = rc / np.linalg.norm(rc)
            if min(np.linalg.norm(rc - c_unit), np.linalg.norm(rc + c_unit)) > cluster_tol:
                continue
            if any(np.linalg.norm(F - g.focus) <= cluster_tol * s for g in found):
                continue
            found.append(q)
    return found


def sample_sheet(q: FocalQuadric, k: int, rng: np.random.Generator, sign: int = 1,
                 max_radius: float | None = None, max_tries: int = 10000) -> np.ndarray:
    """Draw ``k`` points on sheet ``Q+`` (``sign=1``) or ``Q-`` of ``q``.

    Points are generated along random rays from the focus.  ``max_radius``
    bounds their distance from the focus.
    """
    u = q.scaled_normal * sign
    l = q.semilatus * sign
    n = q.n
    e = q.eccentricity
    if max_radius is None:
        max_radius = 10.0 * max(abs(l), q.semi_axes[0] or 0.0, 1.0)
    out = []
    for _ in range(max_tries):
        if len(out) == k:
            break
        w = rng.standard_normal(n)
        if q.klass is QuadricClass.CONE:
            axis = u / e
            w -= (w @ axis) * axis
            nw = np.linalg.norm(w)
            if nw == 0:
                continue
            w = axis / e + math.sqrt(1.0 - 1.0 / e**2) * w / nw
            r = rng.uniform(0.05, 1.0) * max_radius
        else:
            w /= np.linalg.norm(w)
            denom = 1.0 - u @ w
            if denom == 0:
                continue
            r = l / denom
            if not (0.0 < r <= max_radius):
                continue
        out.append(q.focus + r * w)
    if len(out) < k:
        raise DegenerateSampling("could not sample enough points on the requested sheet")
    return np.array(out)
