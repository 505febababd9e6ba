"""Compare the compiled uniqueness kernel with the numpy fallback.

    python3 benchmarks/bench_kernels.py --n 3 --configs 200 --users 1000

Also times the per-point reference classifier on a small sample so the
speedup of the batch kernels is visible.
"""
import argparse
import time

import numpy as np

from lateration import kernels
from lateration.experiments import config_rng, sample_configuration
from lateration.numkernel import DEFAULT_TOL
from lateration.uniqueness import classify_uniqueness


def workload(n, m, configs, users, seed):
    out = []
    for k in range(configs):
        rng = config_rng(seed, k)
        sats = sample_configuration(rng, n, m, 1.0, DEFAULT_TOL)
        out.append((sats, rng.uniform(-1, 1, size=(users, n))))
    return out


def run(impl, work, repeat):
    best = float("inf")
    labels = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        labels = [kernels.classify_users(s, X, implementation=impl) for s, X in work]
        best = min(best, time.perf_counter() - t0)
    return best, labels


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--m", type=int, default=None, help="default n+1")
    ap.add_argument("--configs", type=int, default=200)
    ap.add_argument("--users", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    m = args.m or args.n + 1
    work = workload(args.n, m, args.configs, args.users, args.seed)
    points = args.configs * args.users

    t_np, lab_np = run("numpy", work, args.repeat)
    print(f"numpy     {t_np:8.3f} s  {points / t_np / 1e6:7.2f} Mpts/s")
    if kernels._compiled is not None:
        t_c, lab_c = run("compiled", work, args.repeat)
        same = all(np.array_equal(a, b) for a, b in zip(lab_np, lab_c))
        print(f"compiled  {t_c:8.3f} s  {points / t_c / 1e6:7.2f} Mpts/s  "
              f"speedup {t_np / t_c:.1f}x  labels identical: {same}")
    else:
        print("compiled  not built")

    sats, X = work[0]
    k = min(200, len(X))
    t0 = time.perf_counter()
    for x in X[:k]:
        classify_uniqueness(sats, x)
    t_ref = (time.perf_counter() - t0) / k
    print(f"reference {t_ref * 1e6:8.1f} us/pt (per-point SVD path)")


if __name__ == "__main__":
    main()
