"""Batch uniqueness labelling with a compiled core and a numpy fallback.

The compiled extension is used when it was built; set ``LATERATION_PURE=1``
to force the numpy implementation.  ``IMPLEMENTATION`` names the one in use.
"""
from __future__ import annotations

import os

import numpy as np

from . import _batch
from .model import length_scale, matrix_B
from .numkernel import DEFAULT_TOL, Tolerance

FULLRANK, SPHEROID, SPHERE, HYPERBOLOID, CONE, PARABOLOID = range(6)
DEGENERATE = -1
LABEL_NAMES = {
    FULLRANK: "FULLRANK",
    SPHEROID: "SPHEROID",
    SPHERE: "SPHERE",
    HYPERBOLOID: "HYPERBOLOID",
    CONE: "CONE",
    PARABOLOID: "PARABOLOID",
    DEGENERATE: "DEGENERATE",
}

_compiled = None
if os.environ.get("LATERATION_PURE") != "1":
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

IMPLEMENTATION = "compiled" if _compiled is not None else "numpy"


def _impl(name: str | None):
    name = name or IMPLEMENTATION
    if name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernel is not available")
        return _compiled.classify_users
    if name == "numpy":
        return _batch.classify_users
    raise ValueError(f"unknown implementation {name!r}")


def classify_users(satellites, users, tol: Tolerance = DEFAULT_TOL, implementation: str | None = None) -> np.ndarray:
    """Uniqueness label (int8) for every row of ``users``.

    Satellites are assumed validated.  A user position is non-unique exactly
    when its label is ``HYPERBOLOID``.
    """
    sats = np.ascontiguousarray(satellites, dtype=float)
    users = np.ascontiguousarray(np.atleast_2d(users), dtype=float)
    B = matrix_B(sats)
    pinvB = np.linalg.pinv(B)
    base = length_scale(sats)
    return _impl(implementation)(sats, B, pinvB, users, base, tol.rank_rel, tol.class_abs)


def unique_fraction(satellites, users, tol: Tolerance = DEFAULT_TOL, implementation: str | None = None) -> float:
    labels = classify_users(satellites, users, tol, implementation)
    return float(np.count_nonzero(labels != HYPERBOLOID)) / len(labels)
