"""Monte Carlo uniqueness statistics and uniqueness region maps."""
from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .model import check_satellites, matrix_B
from .numkernel import DEFAULT_TOL, Tolerance, rank_of
from .uniqueness import classify_uniqueness

NUM_BINS = 50


@dataclass(frozen=True)
class Histogram:
    fractions: np.ndarray  # per bin, sums to 1
    average: float
    num_configs: int
    num_users: int
    p_values: np.ndarray  # per-configuration unique fraction

    @property
    def edges(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, len(self.fractions) + 1)

    @property
    def std_error(self) -> float:
        if self.num_configs < 2:
            return float("nan")
        return float(np.std(self.p_values, ddof=1) / np.sqrt(self.num_configs))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["bin_lo", "bin_hi", "fraction"])
        e = self.edges
        for lo, hi, f in zip(e[:-1], e[1:], self.fractions):
            w.writerow([f"{lo:.17g}", f"{hi:.17g}", f"{f:.17g}"])
        buf.write(
            f"# average={self.average:.17g} configs={self.num_configs} users={self.num_users}\n"
        )
        return buf.getvalue()


def bin_fractions(p_values, bins: int = NUM_BINS) -> np.ndarray:
    """Equal-width bins over [0, 1]; p = 1 falls into the last bin."""
    idx = np.minimum((np.asarray(p_values) * bins).astype(int), bins - 1)
    counts = np.bincount(idx, minlength=bins)
    return counts / counts.sum()


def config_rng(seed: int, index: int) -> np.random.Generator:
    """Substream for one configuration; independent of how work is split."""
    return np.random.default_rng([seed, index])


def sample_configuration(rng, n: int, m: int, box: float, tol: Tolerance, max_tries: int = 1000):
    for _ in range(max_tries):
        sats = rng.uniform(-box, box, size=(m, n))
        if rank_of(matrix_B(sats), tol) == n + 1:
            return sats
    raise RuntimeError("could not sample a non-coplanar configuration")


def _p_values(args) -> np.ndarray:
    n, m, users, box, seed, lo, hi, tol, impl = args
    out = np.empty(hi - lo)
    for k in range(lo, hi):
        rng = config_rng(seed, k)
        sats = sample_configuration(rng, n, m, box, tol)
        X = rng.uniform(-box, box, size=(users, n))
        out[k - lo] = kernels.unique_fraction(sats, X, tol, impl)
    return out


def monte_carlo(n: int, m: int, num_configs: int, num_users: int, seed: int = 0,
                box: float = 1.0, tol: Tolerance = DEFAULT_TOL, workers: int = 1,
                implementation: str | None = None) -> Histogram:
    """Histogram of the per-configuration fraction of uniquely solvable users.

    Satellites and users are uniform in ``[-box, box]^n``; configurations that
    are (numerically) coplanar are redrawn.  Configuration ``k`` draws from
    ``default_rng([seed, k])``, so the result does not depend on ``workers``.
    """
    if n < 2 or m < n + 1 or num_configs < 1 or num_users < 1:
        raise ValueError("need n >= 2, m >= n + 1 and positive counts")
    if box <= 0:
        raise ValueError("box must be positive")
    workers = max(1, min(workers, num_configs))
    bounds = np.linspace(0, num_configs, workers + 1).astype(int)
    jobs = [(n, m, num_users, box, seed, int(lo), int(hi), tol, implementation)
            for lo, hi in zip(bounds[:-1], bounds[1:])]
    if workers == 1:
        parts = [_p_values(j) for j in jobs]
    else:
        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(_p_values, jobs))
    p = np.concatenate(parts)
    return Histogram(bin_fractions(p), float(p.mean()), num_configs, num_users, p)


@dataclass(frozen=True)
class RegionMap:
    bbox: tuple  # ((lo_1, hi_1), ..., (lo_n, hi_n))
    resolution: int
    points: np.ndarray  # (resolution^n, n)
    labels: list

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        n = self.points.shape[1]
        w.writerow([f"x{i + 1}" for i in range(n)] + ["label"])
        for p, lab in zip(self.points, self.labels):
            w.writerow([f"{c:.17g}" for c in p] + [lab.value])
        return buf.getvalue()


def grid_points(bbox, resolution: int) -> np.ndarray:
    axes = [np.linspace(lo, hi, resolution) for lo, hi in bbox]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.column_stack([g.ravel() for g in mesh])


def region_map(satellites, bbox, resolution: int, tol: Tolerance = DEFAULT_TOL) -> RegionMap:
    """Uniqueness case of every point of a regular grid over ``bbox``."""
    sats = np.asarray(satellites, dtype=float)
    n = sats.shape[1]
    check_satellites(sats, n, tol)
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    bbox = tuple((float(lo), float(hi)) for lo, hi in bbox)
    if len(bbox) != n or any(hi <= lo for lo, hi in bbox):
        raise ValueError("bbox needs one increasing (lo, hi) pair per dimension")
    pts = grid_points(bbox, resolution)
    labels = [classify_uniqueness(sats, p, tol).case_label for p in pts]
    return RegionMap(bbox, resolution, pts, labels)
