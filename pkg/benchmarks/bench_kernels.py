#!/usr/bin/env python3
"""Benchmark the compiled kernels against the interpreted fallback.

Two layers are timed:

  * the raw kernels (numba dispatcher vs the identical Python source), and
  * an end-to-end basis construction in a subprocess per backend, selected
    through the QJORDAN_BACKEND environment variable.

Usage: python3 benchmarks/bench_kernels.py [--n N] [--q Q]
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from qjordan import _kernels, active_backend
from qjordan.gflinalg import inv_table


def time_call(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def bench_kernels():
    rng = np.random.default_rng(0)
    q = 2
    inv = inv_table(q)
    mats = rng.integers(0, q, size=(60_000, 6, 7)).astype(np.int64)

    compiled = _kernels.rref_batch
    interpreted = _kernels.rref_batch.py_func
    compiled(mats[:8].copy(), q, inv)  # trigger compilation before timing

    t_jit = time_call(lambda: compiled(mats.copy(), q, inv))
    small = mats[:2_000]
    t_py = time_call(lambda: interpreted(small.copy(), q, inv), repeat=3)
    t_py_scaled = t_py * (mats.shape[0] / small.shape[0])
    print(f"rref_batch   60k 6x7 mats mod 2 : compiled {t_jit:8.4f}s"
          f"   interpreted ~{t_py_scaled:8.4f}s   speedup ~{t_py_scaled / t_jit:6.1f}x")

    big = rng.integers(0, 97, size=(400, 400)).astype(np.int64)
    _kernels.modp_rank(big[:4, :4].copy(), 97)
    t_jit = time_call(lambda: _kernels.modp_rank(big.copy(), 97))
    t_py = time_call(lambda: _kernels.modp_rank.py_func(big.copy(), 97), repeat=1)
    print(f"modp_rank    400x400 mod 97     : compiled {t_jit:8.4f}s"
          f"   interpreted  {t_py:8.4f}s   speedup  {t_py / t_jit:6.1f}x")


def bench_end_to_end(n, q):
    code = (
        "import time, qjordan;"
        "t0 = time.perf_counter();"
        f"b = qjordan.construct_sjb({n}, {q});"
        f"r = qjordan.verify_sjb(b, mode='spot');"
        "assert r.ok;"
        "print(f'{time.perf_counter() - t0:.3f}')"
    )
    for backend in ("numba", "numpy"):
        env = dict(os.environ, QJORDAN_BACKEND=backend)
        run = subprocess.run(
            [sys.executable, "-c", code], env=env, capture_output=True, text=True
        )
        if run.returncode != 0:
            print(f"construct+spot (q={q}, n={n}) [{backend}]: FAILED\n{run.stderr}")
            continue
        print(f"construct+spot (q={q}, n={n}) [{backend:5}]: {run.stdout.strip()}s")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=5, help="basis level for the end-to-end run")
    parser.add_argument("--q", type=int, default=2)
    args = parser.parse_args()

    print(f"active backend in this process: {active_backend()}")
    bench_kernels()
    bench_end_to_end(args.n, args.q)


if __name__ == "__main__":
    main()
