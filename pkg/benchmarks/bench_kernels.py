"""Time the compiled and numpy double-sum kernels on the same inputs.

    python benchmarks/bench_kernels.py [--size 2000] [--repeat 3]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from mtzeta import kernels


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(0)
    n = args.size
    a = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    b = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    cases = [("real s", 2.5, False), ("complex s", 2.0 + 0.5j, False), ("log-weighted", 2.5, True)]

    found = kernels.backends()
    print(f"size {n}x{n}, best of {args.repeat}; backends: {', '.join(found)}")
    for label, s, lw in cases:
        vals, times = {}, {}
        for name, mod in found.items():
            times[name] = _time(lambda: mod.weighted_double_sum(a, b, 1.7, s, lw), args.repeat)
            vals[name] = mod.weighted_double_sum(a, b, 1.7, s, lw)
        line = "  ".join(f"{k} {v * 1e3:8.2f} ms" for k, v in times.items())
        if len(vals) == 2:
            diff = abs(vals["cython"] - vals["python"])
            line += f"  speedup {times['python'] / times['cython']:.1f}x  |diff| {diff:.2e}"
        print(f"{label:13s} {line}")


if __name__ == "__main__":
    main()
