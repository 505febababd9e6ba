"""Scenario data, validation and exact forward synthesis of arrival times.

Signal speed is fixed to 1, so arrival times and distances share a unit.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CoplanarSatellites,
    DuplicateSatellites,
    InvalidInput,
    TooFewSatellites,
)
from .numkernel import DEFAULT_TOL, Tolerance, rank_of

DISTINCT_REL = 1e-12


@dataclass(frozen=True)
class Scenario:
    dimension: int
    satellites: np.ndarray  # (m, n)
    times: np.ndarray  # (m,)

    def __post_init__(self):
        sats = np.array(self.satellites, dtype=float)
        times = np.array(self.times, dtype=float).reshape(-1)
        if sats.ndim != 2 or sats.shape[1] != self.dimension:
            raise InvalidInput(
                f"satellites must be an (m, {self.dimension}) array, got shape {sats.shape}"
            )
        if times.shape[0] != sats.shape[0]:
            raise InvalidInput("need one arrival time per satellite")
        if not (np.all(np.isfinite(sats)) and np.all(np.isfinite(times))):
            raise InvalidInput("non-finite coordinate or time")
        sats.setflags(write=False)
        times.setflags(write=False)
        object.__setattr__(self, "satellites", sats)
        object.__setattr__(self, "times", times)

    @property
    def m(self) -> int:
        return self.satellites.shape[0]

    @property
    def n(self) -> int:
        return self.dimension

    def shifted(self, delta: float) -> "Scenario":
        """Same scenario with every arrival time shifted by ``delta``."""
        return Scenario(self.dimension, self.satellites, self.times + delta)

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "satellites": self.satellites.tolist(),
            "times": self.times.tolist(),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "Scenario":
        try:
            n = int(doc["dimension"])
            sats = parse_points(doc["satellites"], n)
            times = [float(t) for t in doc["times"]]
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed scenario document: {exc}") from exc
        return cls(n, sats, times)


@dataclass(frozen=True)
class GroundTruth:
    user: np.ndarray
    bias: float = 0.0

    def __post_init__(self):
        user = np.array(self.user, dtype=float).reshape(-1)
        if not (np.all(np.isfinite(user)) and np.isfinite(self.bias)):
            raise InvalidInput("ground truth must be finite")
        object.__setattr__(self, "user", user)
        object.__setattr__(self, "bias", float(self.bias))

    def to_json(self) -> dict:
        return {"user": self.user.tolist(), "bias": self.bias}

    @classmethod
    def from_json(cls, doc: dict) -> "GroundTruth":
        try:
            return cls(parse_points([doc["user"]])[0], float(doc.get("bias", 0.0)))
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed ground-truth document: {exc}") from exc


@dataclass(frozen=True)
class Solution:
    """A candidate ``(bias, user)`` with its worst range-equation residual."""

    bias: float
    user: np.ndarray
    residual: float = field(default=0.0)

    def to_json(self) -> dict:
        return {"bias": self.bias, "user": list(map(float, self.user)), "residual": self.residual}


def parse_points(rows, n: int | None = None) -> np.ndarray:
    """Convert nested lists to an (m, n) array, rejecting ragged input."""
    if not isinstance(rows, (list, tuple)) or not rows:
        raise InvalidInput("expected a nonempty list of coordinate lists")
    lengths = {len(r) if isinstance(r, (list, tuple)) else -1 for r in rows}
    if len(lengths) != 1 or -1 in lengths:
        raise InvalidInput("ragged or malformed coordinate arrays")
    pts = np.array(rows, dtype=float)
    if n is not None and pts.shape[1] != n:
        raise InvalidInput(f"points have dimension {pts.shape[1]}, expected {n}")
    return pts


def length_scale(satellites, *extra) -> float:
    """Characteristic length used to normalise tolerances.

    The larger of the satellites' bounding-box diameter and the magnitude of
    any extra quantities (coordinates, times) supplied.
    """
    sats = np.asarray(satellites, dtype=float)
    diam = float(np.linalg.norm(sats.max(axis=0) - sats.min(axis=0)))
    mags = [diam, float(np.max(np.abs(sats)))]
    for e in extra:
        e = np.asarray(e, dtype=float)
        if e.size:
            mags.append(float(np.max(np.abs(e))))
    s = max(mags)
    return s if s > 0 else 1.0


def matrix_B(satellites) -> np.ndarray:
    sats = np.asarray(satellites, dtype=float)
    return np.hstack([2.0 * sats, -np.ones((sats.shape[0], 1))])


def check_satellites(satellites, n: int, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    sats = np.asarray(satellites, dtype=float)
    m = sats.shape[0]
    if m < n + 1:
        raise TooFewSatellites(f"need at least n+1 = {n + 1} satellites, got {m}")
    scale = length_scale(sats)
    diff = sats[:, None, :] - sats[None, :, :]
    dist = np.linalg.norm(diff, axis=2)
    dist[np.diag_indices(m)] = np.inf
    if dist.min() <= DISTINCT_REL * scale:
        i, j = np.unravel_index(np.argmin(dist), dist.shape)
        raise DuplicateSatellites(f"satellites {i} and {j} coincide")
    if rank_of(matrix_B(sats), tol) < n + 1:
        raise CoplanarSatellites("satellites lie on a common affine hyperplane")
    return sats


def validate(s: Scenario, tol: Tolerance = DEFAULT_TOL) -> Scenario:
    check_satellites(s.satellites, s.dimension, tol)
    return s


def synthesize_times(satellites, ground: GroundTruth, tol: Tolerance = DEFAULT_TOL) -> Scenario:
    """Arrival times ``|a_i - x| + t`` for a known user position and bias."""
    sats = np.asarray(satellites, dtype=float)
    if sats.ndim != 2 or ground.user.shape[0] != sats.shape[1]:
        raise InvalidInput("user position and satellites differ in dimension")
    check_satellites(sats, sats.shape[1], tol)
    times = np.linalg.norm(sats - ground.user, axis=1) + ground.bias
    return Scenario(sats.shape[1], sats, times)


def residual(satellites, times, bias: float, user) -> float:
    """Worst violation of ``|a_i - x| = t_i - t`` over all satellites."""
    d = np.linalg.norm(np.asarray(satellites) - np.asarray(user), axis=1)
    return float(np.max(np.abs(d - (np.asarray(times) - bias))))


def load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def satellites_from_doc(doc, n: int | None = None) -> np.ndarray:
    """Accept either a bare list of points or an object with ``satellites``."""
    if isinstance(doc, dict):
        if "satellites" not in doc:
            raise InvalidInput("document has no 'satellites' field")
        n = doc.get("dimension")
        doc = doc["satellites"]
    return parse_points(doc, n)
