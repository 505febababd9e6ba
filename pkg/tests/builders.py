"""Constructors for configurations with known geometry."""
import numpy as np

from lateration.model import matrix_B
from lateration.numkernel import rank_of
from lateration.quadric import classify_focal, sample_sheet

E_RANGE = {
    "sphere": (0.0, 0.0),
    "spheroid": (0.2, 0.8),
    "paraboloid": (1.0, 1.0),
    "hyperboloid": (1.2, 2.5),
    "cone": (1.2, 2.5),
}


def focal_config(rng, n, m, kind, max_radius=4.0):
    """Satellites on sheet Q+ of a random focal quadric with focus ``x``.

    Returns ``(x, satellites, quadric)``.
    """
    lo, hi = E_RANGE[kind]
    for _ in range(100):
        x = rng.uniform(-1, 1, n)
        axis = rng.standard_normal(n)
        axis /= np.linalg.norm(axis)
        u = rng.uniform(lo, hi) * axis
        l = 0.0 if kind == "cone" else rng.uniform(0.3, 1.0)
        q = classify_focal(u, u @ x - l, x)
        sats = sample_sheet(q, m, rng, max_radius=max_radius)
        if rank_of(matrix_B(sats)) == n + 1:
            d = np.linalg.norm(sats[:, None] - sats[None], axis=2)
            if np.min(d + np.eye(m) * 1e9) > 1e-3:
                return x, sats, q
    raise RuntimeError("no admissible configuration")
