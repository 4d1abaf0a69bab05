"""Concurrent table building: many writers, no locks, nothing lost.

The shared table's only mutations are indivisible claim-if-empty and
remove-and-own operations, so racing workers can interleave arbitrarily and
the final content still equals the serial build's. Run:
python demos/04_parallel_tables.py
"""
import random
import sys

import numpy as np

from polyfactor import (
    RhoVector,
    factor,
    gen_random_reducible,
    parallel_build,
    splat,
)

sys.setswitchinterval(1e-5)  # force frequent thread preemption

rng = random.Random(1)
rho = RhoVector.from_values([rng.random() for _ in range(14)])
serial = splat(rho)
sv, sp = serial.content()

print("width-14 instance, 16384 insertions, yield injection on:")
for workers in (1, 2, 4, 8):
    tab = parallel_build(rho, workers=workers, yield_every=5)
    pv, pp = tab.content()
    same = np.array_equal(pv, sv) and np.array_equal(pp, sp)
    print(
        f"  workers={workers}: occupied {tab.occupied():,} / expected {1 << 14:,}, "
        f"content == serial: {same}"
    )

p = gen_random_reducible(24, 100, seed=3)
base = factor(p, backend="e", workers=1).factors
print(f"\nend to end on a degree-24 input: {' * '.join(str(g) for g, _ in base)}")
for workers in (2, 4, 8):
    got = factor(p, backend="e", workers=workers).factors
    print(f"  workers={workers}: factor set identical: {got == base}")
