"""Exponential scaling of the meet-in-the-middle search.

Backend e's work is dominated by 2^(n/2) table operations, so log2(time)
against n should climb with slope one half. This runs a small sweep on
synthetic instances and fits the slope; `polyfactor bench` produces the same
numbers as CSV from real polynomial inputs. Run:
python demos/05_scaling_benchmark.py
"""
import random
import time

import numpy as np

from polyfactor import RhoVector, recombine_e

rng = random.Random(11)
recombine_e(RhoVector.from_values(sorted(rng.random() for _ in range(18))), 1e-9)  # warm up

ns = list(range(24, 39, 2))
logs = []
print(f"{'n':>4} {'2^(n/2)':>12} {'time':>10}")
for n in ns:
    rho = RhoVector.from_values(sorted(rng.random() for _ in range(n)))
    best = min(
        (lambda t0: (recombine_e(rho, 1e-9), time.perf_counter() - t0)[1])(time.perf_counter())
        for _ in range(3)
    )
    logs.append(np.log2(best))
    print(f"{n:>4} {1 << (n // 2):>12,} {best * 1e3:>8.1f}ms")

slope = float(np.polyfit(ns, logs, 1)[0])
print(f"\nleast-squares slope of log2(time) vs n: {slope:.3f}  (ideal 0.5)")
print("each +2 in n should double the time; deviations at the top end are")
print("cache effects, not algorithm growth")
