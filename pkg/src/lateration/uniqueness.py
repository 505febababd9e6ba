"""When does a set of ranges determine the user uniquely?

For fixed satellites and user position ``x`` the answer depends only on the
focal quadric through the satellites with focus ``x``: the position is
ambiguous exactly when that quadric is a two-sheet hyperboloid.  This module
classifies single positions, certifies whole satellite configurations via
the moment matrix, evaluates the determinant-product test and samples
ambiguous configurations.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateSampling, InconsistentReduction, WrongSatelliteCount
from .model import GroundTruth, Solution, check_satellites, length_scale, matrix_B, synthesize_times
from .numkernel import DEFAULT_TOL, Tolerance, nullspace, rank_of
from .quadric import (
    FocalQuadric,
    QuadricClass,
    classify_focal,
    monomial_rows,
    num_monomials,
    recover_focal_parameters,
    second_focus,
)
from .solver import assemble_A, reduce

# Looser than the rank cutoff: B can amplify the residual of a borderline
# rank decision.
REDUCTION_REL = 1e-5


class CaseLabel(enum.Enum):
    FULLRANK = "FULLRANK"
    SPHEROID = "SPHEROID"
    SPHERE = "SPHERE"
    HYPERBOLOID = "HYPERBOLOID"
    CONE = "CONE"
    PARABOLOID = "PARABOLOID"


_LABEL_OF = {
    QuadricClass.SPHERE: CaseLabel.SPHERE,
    QuadricClass.PROLATE_SPHEROID: CaseLabel.SPHEROID,
    QuadricClass.TWO_SHEET_HYPERBOLOID: CaseLabel.HYPERBOLOID,
    QuadricClass.CONE: CaseLabel.CONE,
    QuadricClass.PARABOLOID: CaseLabel.PARABOLOID,
}


@dataclass(frozen=True)
class UniquenessReport:
    unique: bool
    rank_A: int
    case_label: CaseLabel
    quadric: FocalQuadric | None = None
    alternate: Solution | None = None

    def to_json(self) -> dict:
        return {
            "unique": self.unique,
            "rank_A": self.rank_A,
            "case_label": self.case_label.value,
            "quadric": None if self.quadric is None else self.quadric.to_json(),
            "alternate": None if self.alternate is None else self.alternate.to_json(),
        }


def classify_uniqueness(satellites, x, tol: Tolerance = DEFAULT_TOL, bias: float = 0.0) -> UniquenessReport:
    """Decide whether ``x`` is the only position consistent with its ranges.

    ``bias`` only shifts the reported alternate solution; the geometry does
    not depend on it.
    """
    sats = np.asarray(satellites, dtype=float)
    x = np.asarray(x, dtype=float).reshape(-1)
    n = sats.shape[1]
    s = synthesize_times(sats, GroundTruth(x, 0.0), tol)
    rank_A = rank_of(assemble_A(s), tol)
    if rank_A == n + 2:
        return UniquenessReport(True, rank_A, CaseLabel.FULLRANK)

    scale = length_scale(sats, x)
    red = reduce(s, tol)
    # every satellite satisfies <u, a_i> - alpha = |a_i - x| at zero bias
    gap = np.max(np.abs(sats @ red.u - red.alpha - s.times))
    if gap > REDUCTION_REL * scale:
        raise InconsistentReduction(
            f"rank {rank_A} < {n + 2} but the reduction misses the ranges by {gap:.3g}"
        )
    q = classify_focal(red.u, red.alpha, x, tol, scale)
    label = _LABEL_OF[q.klass]
    if label is not CaseLabel.HYPERBOLOID:
        return UniquenessReport(True, rank_A, label, q)

    x2, _ = second_focus(q)
    d2 = np.linalg.norm(sats - x2, axis=1)
    t2 = bias + float(np.mean(s.times - d2))
    alt = Solution(t2, x2, float(np.max(np.abs(d2 - (s.times + bias - t2)))))
    return UniquenessReport(False, rank_A, label, q, alt)


# -- configuration certificates ----------------------------------------------

def build_moment_matrix(satellites, n: int | None = None) -> np.ndarray:
    """Rows are the monomials of degree <= 2 evaluated at each satellite."""
    sats = np.atleast_2d(np.asarray(satellites, dtype=float))
    if n is not None and sats.shape[1] != n:
        raise ValueError(f"satellites have dimension {sats.shape[1]}, expected {n}")
    return monomial_rows(sats)


class Certificate(enum.Enum):
    NO_QUADRIC = "NO_QUADRIC"  # no quadric contains all satellites
    NO_HYPERBOLOID_SHEET = "NO_HYPERBOLOID_SHEET"  # the only quadric is harmless
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class CertifyResult:
    certificate: Certificate
    moment_rank: int
    detail: str = ""
    candidates: list = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.certificate is not Certificate.INCONCLUSIVE

    def to_json(self) -> dict:
        return {
            "certificate": self.certificate.value,
            "certified": self.certified,
            "moment_rank": self.moment_rank,
            "detail": self.detail,
            "candidates": [c.to_json() for c in self.candidates],
        }


def _one_sheet(q: FocalQuadric, sats: np.ndarray, eps: float) -> bool:
    side = q.directrix_value(sats)
    return bool(np.all(side > -eps) or np.all(side < eps))


def certify_uniqueness(satellites, n: int | None = None, tol: Tolerance = DEFAULT_TOL) -> CertifyResult:
    """Certify that the ranges determine every user position uniquely.

    Works in centred, scaled coordinates so the monomial columns are
    comparable; the rank and the quadric geometry are similarity invariant.
    """
    sats = np.asarray(satellites, dtype=float)
    n = sats.shape[1] if n is None else n
    check_satellites(sats, n, tol)
    N = num_monomials(n)
    centre = sats.mean(axis=0)
    scale = length_scale(sats - centre)
    P = (sats - centre) / scale
    M = build_moment_matrix(P, n)
    r = rank_of(M, tol)
    if r == N:
        return CertifyResult(Certificate.NO_QUADRIC, r)
    if r < N - 1:
        return CertifyResult(
            Certificate.INCONCLUSIVE, r, f"{N - r} independent quadrics contain the satellites"
        )
    (coeffs,) = nullspace(M, tol)
    cands = recover_focal_parameters(coeffs, n, tol, scale=1.0)
    bad = [
        q for q in cands
        if q.klass is QuadricClass.TWO_SHEET_HYPERBOLOID and _one_sheet(q, P, math.sqrt(tol.class_abs))
    ]
    if not bad:
        return CertifyResult(Certificate.NO_HYPERBOLOID_SHEET, r)
    out = [
        classify_focal(q.scaled_normal, scale * q.offset + q.scaled_normal @ centre,
                       scale * q.focus + centre, tol, scale)
        for q in bad
    ]
    return CertifyResult(
        Certificate.INCONCLUSIVE, r,
        "all satellites lie on one sheet of a hyperboloid of revolution", out,
    )


# -- determinant-product test ------------------------------------------------

def f_tilde_terms(satellites, x) -> np.ndarray:
    """Stack of the ``2^(n+1)`` matrices with rows ``(e_i |a_i - x|, a_i, 1)``.

    The first sign is fixed to ``+1``; the others run over all patterns.
    """
    sats = np.asarray(satellites, dtype=float)
    m, n = sats.shape
    if m != n + 2:
        raise WrongSatelliteCount(f"need exactly n+2 = {n + 2} satellites, got {m}")
    d = np.linalg.norm(sats - np.asarray(x, dtype=float), axis=1)
    signs = np.array(list(itertools.product((1.0, -1.0), repeat=m - 1)))
    signs = np.hstack([np.ones((len(signs), 1)), signs])
    mats = np.empty((len(signs), m, m))
    mats[:, :, 0] = signs * d
    mats[:, :, 1 : n + 1] = sats
    mats[:, :, n + 1] = 1.0
    return mats


def f_tilde_log(satellites, x) -> tuple[float, float]:
    """``(sign, log|value|)`` of the determinant product; sign 0 means zero."""
    sign, logdet = np.linalg.slogdet(f_tilde_terms(satellites, x))
    return float(np.prod(sign)), float(np.sum(logdet))


def f_tilde(satellites, x) -> float:
    sign, logabs = f_tilde_log(satellites, x)
    if sign == 0:
        return 0.0
    with np.errstate(over="ignore"):
        return float(sign * np.exp(logabs))


def f_tilde_margin(satellites, x) -> float:
    """Smallest factor relative to its Hadamard bound, a value in [0, 1].

    The product vanishes exactly when some factor does, so this is the
    scale-free quantity compared against the zero threshold.
    """
    mats = f_tilde_terms(satellites, x)
    _, logdet = np.linalg.slogdet(mats)
    hadamard = np.sum(np.log(np.linalg.norm(mats, axis=2)), axis=1)
    return float(np.exp(np.min(logdet - hadamard)))


def f_tilde_nonzero(satellites, x, tau: float = 1e-9) -> bool:
    return f_tilde_margin(satellites, x) > tau


# -- ambiguous configurations ------------------------------------------------

def sample_hyperboloid_witness(n: int, m: int, seed=None, spread: float = 2.0,
                               tol: Tolerance = DEFAULT_TOL, max_tries: int = 100):
    """Satellites on one sheet of ``x_1^2 - sum_{i>1} x_i^2 = 1`` and the
    focus ``x = (sqrt 2, 0, ..., 0)``.

    The other focus ``(-sqrt 2, 0, ..., 0)`` with bias lowered by 2 explains
    the same ranges.  ``y`` is uniform in ``[-spread, spread]^(n-1)``.
    """
    if n < 2 or m < n + 1:
        raise ValueError("need n >= 2 and m >= n + 1")
    rng = np.random.default_rng(seed)
    x = np.zeros(n)
    x[0] = math.sqrt(2.0)
    for _ in range(max_tries):
        y = rng.uniform(-spread, spread, size=(m, n - 1))
        sats = np.hstack([np.sqrt(1.0 + np.sum(y * y, axis=1))[:, None], y])
        if rank_of(matrix_B(sats), tol) == n + 1:
            return x, sats
    raise DegenerateSampling(f"no non-coplanar sample in {max_tries} attempts")
