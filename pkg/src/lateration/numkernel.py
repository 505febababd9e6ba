"""Small dense linear algebra with explicit tolerances.

All rank decisions go through singular values with a relative cutoff so they
are invariant under rescaling of the input.  Matrices are plain 2-D float
``numpy`` arrays.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ColumnRankDeficient, NotSymmetric


@dataclass(frozen=True)
class Tolerance:
    """Numerical thresholds.

    rank_rel
        Singular values at or below ``rank_rel * sigma_max`` count as zero.
    class_abs
        Absolute threshold for quadric classification, applied to
        scale-normalised quantities (eccentricity, semilatus / scale).
    """

    rank_rel: float = 1e-9
    class_abs: float = 1e-9

    def __post_init__(self):
        for name in ("rank_rel", "class_abs"):
            v = getattr(self, name)
            if not (0.0 < v < 1.0):
                raise ValueError(f"{name} must lie in (0, 1), got {v!r}")


DEFAULT_TOL = Tolerance()


def as_matrix(M) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.ndim == 1:
        M = M[None, :]
    if M.ndim != 2 or M.size == 0:
        raise ValueError("expected a nonempty 2-D matrix")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    return M


def singular_values(M) -> np.ndarray:
    return np.linalg.svd(as_matrix(M), compute_uv=False)


def rank_of(M, tol: Tolerance = DEFAULT_TOL) -> int:
    s = singular_values(M)
    if s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol.rank_rel * s[0]))


def pseudo_inverse(M, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Left inverse of a matrix with full column rank, computed from the SVD.

    Raises :class:`ColumnRankDeficient` when the column rank is not full, so
    the caller can switch to the rank-deficient code path.
    """
    M = as_matrix(M)
    U, s, Vt = np.linalg.svd(M, full_matrices=False)
    if M.shape[0] < M.shape[1] or s[0] == 0.0 or s[-1] <= tol.rank_rel * s[0]:
        raise ColumnRankDeficient(
            f"{M.shape[0]}x{M.shape[1]} matrix lacks full column rank"
        )
    return (Vt.T / s) @ U.T


def nullspace(M, tol: Tolerance = DEFAULT_TOL) -> list[np.ndarray]:
    """Orthonormal basis of the right nullspace (possibly empty)."""
    M = as_matrix(M)
    _, s, Vt = np.linalg.svd(M, full_matrices=True)
    r = 0 if s[0] == 0.0 else int(np.count_nonzero(s > tol.rank_rel * s[0]))
    return [Vt[i].copy() for i in range(r, M.shape[1])]


def sym_eigen(S, tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues in descending order and the matching orthonormal eigenvectors
    (as columns)."""
    S = as_matrix(S)
    if S.shape[0] != S.shape[1]:
        raise NotSymmetric("matrix is not square")
    if np.max(np.abs(S - S.T)) > tol.class_abs * max(1.0, np.max(np.abs(S))):
        raise NotSymmetric("matrix is not symmetric within tolerance")
    w, V = np.linalg.eigh(0.5 * (S + S.T))
    return w[::-1].copy(), V[:, ::-1].copy()


def slogdet(M) -> tuple[float, float]:
    return tuple(float(v) for v in np.linalg.slogdet(as_matrix(M)))
