"""Direct algebraic solution of the pseudo-range equations.

Given satellites ``a_i`` and arrival times ``t_i`` the unknowns ``(t, x)``
satisfy ``|a_i - x| = t_i - t``.  Squaring makes the system linear in
``(t, x, |x|^2 - t^2)``.  If that linear system has full column rank the
solution is read off directly.  Otherwise ``x`` is an affine function of
``t`` and ``t`` solves a scalar quadratic, whose roots are then filtered by
the causality condition ``t <= t_i``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ColumnRankDeficient,
    CoplanarSatellites,
    DegenerateQuadratic,
    DegenerateQuadric,
    NoSolution,
)
from .model import Scenario, Solution, length_scale, matrix_B, residual
from .numkernel import DEFAULT_TOL, Tolerance, pseudo_inverse, rank_of
from .quadric import FocalQuadric, classify_focal, second_focus

# Relative slack on the causality inequality and on accepted residuals.
INEQ_REL = 1e-9
RESIDUAL_REL = 1e-6
# The semilatus recovered from the discriminant carries sqrt(eps)-sized noise,
# so the double-root band is this many times wider than class_abs.
DISC_LOSS = 100.0


class Branch(enum.Enum):
    FULL_RANK = "FULL_RANK"
    RANK_DEFICIENT = "RANK_DEFICIENT"


@dataclass(frozen=True)
class Reduction:
    """``x = t*u + v`` and ``|x|^2 - t^2 = 2*alpha*t + beta``."""

    u: np.ndarray
    v: np.ndarray
    alpha: float
    beta: float

    def quadratic(self) -> tuple[float, float, float]:
        """Coefficients ``(c2, c1, c0)`` of ``c2 t^2 + c1 t + c0 = 0``."""
        u, v = self.u, self.v
        return (
            float(u @ u - 1.0),
            float(2.0 * (u @ v - self.alpha)),
            float(v @ v - self.beta),
        )

    def to_json(self) -> dict:
        return {
            "u": self.u.tolist(),
            "v": self.v.tolist(),
            "alpha": self.alpha,
            "beta": self.beta,
        }


@dataclass
class SolveReport:
    branch: Branch
    rank_A: int
    solutions: list[Solution]
    rejected: list[Solution] = field(default_factory=list)
    reduction: Reduction | None = None
    quad_coeffs: tuple[float, float, float] | None = None
    discriminant: float | None = None
    scale: float = 1.0
    quadric: FocalQuadric | None = None  # focus at the first solution

    @property
    def normalized_discriminant(self) -> float | None:
        """Discriminant divided by ``4 * scale**2``; equals ``(l/scale)**2``
        where ``|l|`` is the semilatus rectum of the associated quadric."""
        if self.discriminant is None:
            return None
        return self.discriminant / (4.0 * self.scale**2)

    def to_json(self) -> dict:
        doc = {
            "branch": self.branch.value,
            "rank_A": self.rank_A,
            "solutions": [s.to_json() for s in self.solutions],
            "rejected": [s.to_json() for s in self.rejected],
        }
        if self.reduction is not None:
            doc["reduction"] = self.reduction.to_json()
            doc["quad_coeffs"] = list(self.quad_coeffs)
        if self.discriminant is not None:
            doc["discriminant"] = self.discriminant
            doc["normalized_discriminant"] = self.normalized_discriminant
        if self.quadric is not None:
            doc["quadric"] = self.quadric.to_json()
            other = second_focus(self.quadric)
            if other is not None:
                doc["quadric"]["second_focus"] = other[0].tolist()
                doc["quadric"]["sheet_distance"] = other[1]
        return doc


def assemble_A(s: Scenario) -> np.ndarray:
    """Rows ``(-2 t_i, 2 a_i, -1)``."""
    return np.hstack([-2.0 * s.times[:, None], matrix_B(s.satellites)])


def assemble_B(s: Scenario) -> np.ndarray:
    """Rows ``(2 a_i, -1)``."""
    return matrix_B(s.satellites)


def _rhs(s: Scenario) -> np.ndarray:
    return np.einsum("ij,ij->i", s.satellites, s.satellites) - s.times**2


def reduce(s: Scenario, tol: Tolerance = DEFAULT_TOL) -> Reduction:
    try:
        Bp = pseudo_inverse(assemble_B(s), tol)
    except ColumnRankDeficient as exc:
        raise CoplanarSatellites("satellites lie on a common affine hyperplane") from exc
    n = s.dimension
    w = 2.0 * (Bp @ s.times)
    z = Bp @ _rhs(s)
    return Reduction(u=w[:n], v=z[:n], alpha=float(w[n] / 2.0), beta=float(z[n]))


def _full_rank(s: Scenario, tol: Tolerance) -> Solution:
    y = pseudo_inverse(assemble_A(s), tol) @ _rhs(s)
    t, x = float(y[0]), y[1 : s.dimension + 1]
    return Solution(t, x, residual(s.satellites, s.times, t, x))


def quadratic_roots(c2, c1, c0, scale, tol: Tolerance = DEFAULT_TOL, linear=False):
    """Real roots of ``c2 t^2 + c1 t + c0``, returned with the discriminant.

    ``linear`` selects the paraboloid case: only the root that stays bounded
    as ``c2 -> 0`` is kept.  A normalised discriminant inside the tolerance
    band is clamped to zero and yields a double root.
    """
    disc = c1 * c1 - 4.0 * c2 * c0
    if linear:
        if abs(c1) <= tol.class_abs * scale:
            raise DegenerateQuadratic("coefficients of t^2 and t both vanish")
        q = -0.5 * (c1 + math.copysign(math.sqrt(max(disc, 0.0)), c1))
        return [c0 / q], disc
    delta = disc / (4.0 * scale * scale)
    if delta < -tol.class_abs:
        return [], disc
    if delta <= (DISC_LOSS * tol.class_abs) ** 2:
        return [-c1 / (2.0 * c2)], disc
    q = -0.5 * (c1 + math.copysign(math.sqrt(disc), c1 if c1 != 0 else 1.0))
    return sorted([q / c2, c0 / q], reverse=True), disc


def solve(s: Scenario, tol: Tolerance = DEFAULT_TOL) -> SolveReport:
    """All solutions ``(t', x')`` of the pseudo-range equations.

    The scenario must already be valid (see :func:`model.validate`).  A
    full-rank solution whose residual is poor (rank decision near the
    threshold) falls back to the quadratic branch, which is exact for any
    rank of ``A``.
    """
    n = s.dimension
    scale = length_scale(s.satellites, s.times)
    res_tol = RESIDUAL_REL * scale
    A = assemble_A(s)
    rank_A = rank_of(A, tol)
    if rank_A == n + 2:
        sol = _full_rank(s, tol)
        if sol.residual <= res_tol:
            return SolveReport(Branch.FULL_RANK, rank_A, [sol], scale=scale)

    red = reduce(s, tol)
    c2, c1, c0 = red.quadratic()
    e = math.sqrt(max(c2 + 1.0, 0.0))
    paraboloid = abs(e - 1.0) <= tol.class_abs
    if paraboloid and abs(c1) <= tol.class_abs * scale:
        raise DegenerateQuadratic("coefficients of t^2 and t both vanish")
    roots, disc = quadratic_roots(c2, c1, c0, scale, tol, linear=paraboloid)

    ineq_tol = INEQ_REL * scale
    solutions, rejected = [], []
    for t in roots:
        x = t * red.u + red.v
        d = np.linalg.norm(s.satellites - x, axis=1)
        if np.max(np.abs(d - np.abs(s.times - t))) > res_tol:
            continue  # spurious root of the squared system
        cand = Solution(float(t), x, residual(s.satellites, s.times, t, x))
        if np.all(t <= s.times + ineq_tol):
            solutions.append(cand)
        else:
            rejected.append(cand)
    if not solutions:
        raise NoSolution("no root satisfies the range equations; inconsistent times")
    # the satellites lie on this quadric with focus at the first solution
    first = solutions[0]
    try:
        quadric = classify_focal(red.u, red.alpha + first.bias, first.user, tol, scale)
    except DegenerateQuadric:
        quadric = None
    return SolveReport(
        Branch.RANK_DEFICIENT,
        rank_A,
        solutions,
        rejected,
        reduction=red,
        quad_coeffs=(c2, c1, c0),
        discriminant=None if paraboloid else disc,
        scale=scale,
        quadric=quadric,
    )
