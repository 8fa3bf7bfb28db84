"""Benchmark the jitted kernels against the pure-numpy fallback.

The kernel path is chosen at import time from the CSTARNORMS_PURE_NUMPY
environment variable, so the comparison runs each side in a subprocess and
prints a combined table.  Usage:

    python benchmarks/bench_kernels.py [--repeats 200]
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

EIG_DIMS = (4, 8, 16, 32)
DR_DIM = 8


def _rand_herm(n, rng):
    x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return np.ascontiguousarray((x + x.conj().T) / 2.0)


def run_measurements(repeats):
    from cstarnorms import _kernels

    rng = np.random.default_rng(0)
    results = {"numba": _kernels.USING_NUMBA, "timings": {}}

    for n in EIG_DIMS:
        m = _rand_herm(n, rng)
        _kernels.jacobi_eig(m.copy(), 30, 1e-14)  # warm-up / compile
        start = time.perf_counter()
        for _ in range(repeats):
            _kernels.jacobi_eig(m.copy(), 30, 1e-14)
        results["timings"][f"jacobi_eig {n}x{n}"] = (time.perf_counter() - start) / repeats

    m = _rand_herm(DR_DIM, rng)
    _kernels.psd_project(m, 30, 1e-14)
    start = time.perf_counter()
    for _ in range(repeats):
        _kernels.psd_project(m, 30, 1e-14)
    results["timings"][f"psd_project {DR_DIM}x{DR_DIM}"] = (time.perf_counter() - start) / repeats

    wa = rng.uniform(0.2, 4.0, DR_DIM)
    f = _rand_herm(DR_DIM, rng)
    f /= np.abs(np.linalg.eigvalsh(f)).sum()
    reps = max(1, repeats // 20)
    _kernels.dr_solve(wa, f.copy(), 1e-7, 50000, 10, 1.6, 30, 1e-14)
    start = time.perf_counter()
    for _ in range(reps):
        _kernels.dr_solve(wa, f.copy(), 1e-7, 50000, 10, 1.6, 30, 1e-14)
    results["timings"][f"dr_solve {DR_DIM}x{DR_DIM}"] = (time.perf_counter() - start) / reps
    return results


def _spawn(mode, repeats):
    env = dict(os.environ)
    env["CSTARNORMS_PURE_NUMPY"] = "1" if mode == "numpy" else "0"
    out = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--worker", "--repeats", str(repeats)],
        env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=200)
    parser.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.worker:
        print(json.dumps(run_measurements(args.repeats)))
        return

    jit = _spawn("jit", args.repeats)
    pure = _spawn("numpy", args.repeats)
    if not jit["numba"]:
        print("note: numba unavailable; both columns use the numpy fallback")
    header = f"{'kernel':24s} {'numba':>12s} {'pure numpy':>12s} {'speedup':>9s}"
    print(header)
    print("-" * len(header))
    for name, t_jit in jit["timings"].items():
        t_np = pure["timings"][name]
        print(f"{name:24s} {t_jit * 1e6:10.1f}us {t_np * 1e6:10.1f}us "
              f"{t_np / t_jit:8.1f}x")


if __name__ == "__main__":
    main()
