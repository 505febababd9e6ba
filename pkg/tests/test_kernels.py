import os
import subprocess
import sys

import numpy as np
import pytest

from lateration import kernels
from lateration.uniqueness import classify_uniqueness, sample_hyperboloid_witness

from builders import focal_config

IMPLS = ["numpy"] + (["compiled"] if kernels._compiled is not None else [])


def _reference(sats, X):
    names = [classify_uniqueness(sats, x).case_label.value for x in X]
    return np.array([list(kernels.LABEL_NAMES.values()).index(v) for v in names])


@pytest.mark.parametrize("impl", IMPLS)
def test_matches_reference_random(rng, impl):
    for n in (2, 3, 4):
        for m in (n + 1, n + 2, n + 4):
            sats = rng.uniform(-1, 1, (m, n))
            X = rng.uniform(-1, 1, (40, n))
            assert np.array_equal(kernels.classify_users(sats, X, implementation=impl), _reference(sats, X))


@pytest.mark.parametrize("impl", IMPLS)
@pytest.mark.parametrize("kind", ["sphere", "spheroid", "hyperboloid", "cone", "paraboloid"])
def test_matches_reference_constructed(rng, impl, kind):
    for n in (2, 3):
        x, sats, _ = focal_config(rng, n, n + 4, kind)
        X = np.vstack([x, rng.uniform(-1, 1, (10, n))])
        assert np.array_equal(kernels.classify_users(sats, X, implementation=impl), _reference(sats, X))


@pytest.mark.parametrize("impl", IMPLS)
def test_witness_label(impl):
    x, sats = sample_hyperboloid_witness(3, 8, seed=4)
    assert kernels.classify_users(sats, x, implementation=impl)[0] == kernels.HYPERBOLOID


def test_implementations_agree(rng):
    if len(IMPLS) < 2:
        pytest.skip("compiled kernel not built")
    for _ in range(20):
        sats = rng.uniform(-1, 1, (4, 3))
        X = rng.uniform(-1, 1, (500, 3))
        a = kernels.classify_users(sats, X, implementation="numpy")
        b = kernels.classify_users(sats, X, implementation="compiled")
        assert np.array_equal(a, b)


def test_unknown_implementation():
    with pytest.raises(ValueError):
        kernels.classify_users(np.eye(3), np.zeros((1, 3)), implementation="fortran")


def test_pure_env_forces_fallback():
    env = dict(os.environ, LATERATION_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "from lateration import kernels; print(kernels.IMPLEMENTATION)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "numpy"
