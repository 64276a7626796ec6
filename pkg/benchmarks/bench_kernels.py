"""Compare the numba-compiled hot kernels against the pure-numpy fallback.

Runs each suite twice in subprocesses: once as installed (numba on when
available) and once with CIESDRO_NO_NUMBA=1. Prints a small table.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys
import time


def run_suite(repeat):
    import numpy as np

    from ciesdro.accel import USING_NUMBA
    from ciesdro.scenarios import kmeans_cluster, silhouette
    from ciesdro.solver import SparseProblem, solve_lp
    from ciesdro.fixture import generate_pv_samples

    results = {"numba": USING_NUMBA}

    samples = generate_pv_samples(730, 0)
    kmeans_cluster(samples, 4, 0)  # warm any jit
    t0 = time.perf_counter()
    for _ in range(repeat):
        clus = kmeans_cluster(samples, 4, 0)
    results["kmeans_730x24_k4"] = (time.perf_counter() - t0) / repeat

    small = samples[:160]
    clus = kmeans_cluster(small, 4, 0)
    silhouette(small, clus)
    t0 = time.perf_counter()
    for _ in range(repeat):
        silhouette(small, clus)
    results["silhouette_160x24"] = (time.perf_counter() - t0) / repeat

    rng = np.random.default_rng(0)
    m, n = 120, 240
    prob = SparseProblem()
    for j in range(n):
        prob.add_var(0.0, 10.0, rng.normal())
    x0 = rng.uniform(1, 5, size=n)
    a = rng.normal(size=(m, n))
    b = a @ x0 + rng.uniform(0.5, 2.0, size=m)
    for i in range(m):
        prob.add_row(range(n), a[i], "<=", b[i])
    solve_lp(prob)
    t0 = time.perf_counter()
    for _ in range(max(1, repeat // 2)):
        sol = solve_lp(prob)
    results["simplex_120x240"] = (time.perf_counter() - t0) / max(1, repeat // 2)
    results["simplex_iterations"] = sol.iterations
    return results


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--inner", action="store_true",
                        help="run one suite and emit JSON (internal)")
    args = parser.parse_args()

    if args.inner:
        print(json.dumps(run_suite(args.repeat)))
        return

    rows = {}
    for label, env_flag in (("numba", "0"), ("numpy", "1")):
        env = dict(os.environ, CIESDRO_NO_NUMBA=env_flag)
        out = subprocess.run(
            [sys.executable, __file__, "--inner", "--repeat", str(args.repeat)],
            env=env, capture_output=True, text=True, check=True)
        rows[label] = json.loads(out.stdout.strip().splitlines()[-1])

    if rows["numba"]["numba"] is False:
        print("numba unavailable; both columns ran the numpy fallback\n")
    keys = [k for k in rows["numba"] if k not in ("numba", "simplex_iterations")]
    print(f"{'kernel':<22} {'numba (s)':>12} {'numpy (s)':>12} {'speedup':>9}")
    for k in keys:
        a, b = rows["numba"][k], rows["numpy"][k]
        print(f"{k:<22} {a:>12.4f} {b:>12.4f} {b / a:>8.1f}x")


if __name__ == "__main__":
    main()
