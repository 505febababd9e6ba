"""Vectorised numpy implementation of the per-user uniqueness kernel.

Used when the compiled extension is unavailable.  Signature and results
match ``_kernels.classify_users``.
"""
import numpy as np

FULLRANK, SPHEROID, SPHERE, HYPERBOLOID, CONE, PARABOLOID = range(6)
DEGENERATE = -1


def classify_users(sats, B, pinvB, users, base_scale, rank_tol, class_tol):
    """Label each user position with its uniqueness case.

    ``B`` is the ``m x (n+1)`` matrix with rows ``(2 a_i, -1)`` and ``pinvB``
    its pseudoinverse.  At bias zero the times are the distances, and the
    system is rank deficient exactly when those distances lie in the column
    space of ``B``.
    """
    sats = np.asarray(sats, dtype=float)
    users = np.asarray(users, dtype=float)
    m, n = sats.shape
    D = np.sqrt(((users[:, None, :] - sats[None, :, :]) ** 2).sum(axis=2))
    C = D @ pinvB.T
    if m >= n + 2:
        R = D - C @ B.T
        full = np.linalg.norm(R, axis=1) > rank_tol * np.linalg.norm(D, axis=1)
    else:
        full = np.zeros(len(users), dtype=bool)
    u = 2.0 * C[:, :n]
    alpha = C[:, n]
    e = np.linalg.norm(u, axis=1)
    l = np.einsum("ij,ij->i", u, users) - alpha
    scale = np.maximum(base_scale, np.abs(users).max(axis=1))
    flat = np.abs(l) <= class_tol * scale

    labels = np.full(len(users), HYPERBOLOID, dtype=np.int8)
    labels[flat] = CONE
    labels[e < 1.0] = SPHEROID
    labels[(e < 1.0) & flat] = DEGENERATE
    para = np.abs(e - 1.0) <= class_tol
    labels[para] = np.where(flat[para], DEGENERATE, PARABOLOID)
    sph = e <= class_tol
    labels[sph] = np.where(flat[sph], DEGENERATE, SPHERE)
    labels[full] = FULLRANK
    return labels
