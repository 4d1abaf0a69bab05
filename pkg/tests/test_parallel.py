import random
import sys

import numpy as np
import pytest

from polyfactor.parallel import (
    SharedValueTable,
    parallel_build,
    parallel_insert,
    parallel_query_sweep,
    parallel_recombine_e,
    serial_reference_table,
)
from polyfactor.polynomial import IntPolynomial, gen_random_reducible
from polyfactor.recombine import RecombineStats, RhoVector, recombine_e
from polyfactor.verify import factor


def rho_of(seed: int, n: int) -> RhoVector:
    rng = random.Random(seed)
    return RhoVector.from_values([rng.random() for _ in range(n)])


def contents_equal(tab: SharedValueTable, ref) -> bool:
    pv, pp = tab.content()
    sv, sp = ref.content()
    return np.array_equal(pv, sv) and np.array_equal(pp, sp)


def test_single_worker_matches_serial_cell_for_cell():
    rho = rho_of(1, 12)
    tab = parallel_build(rho, workers=1)
    ser = serial_reference_table(rho)
    assert np.array_equal(tab.values, ser.values)
    assert np.array_equal(tab.patterns, ser.patterns)


def test_two_workers_disjoint_values_none_lost():
    rho = rho_of(2, 10)
    tab = parallel_build(rho, workers=2)
    assert tab.occupied() == 1 << 10
    assert contents_equal(tab, serial_reference_table(rho))


@pytest.mark.parametrize("workers", [2, 4, 8])
def test_racing_workers_content_multiset(workers):
    old = sys.getswitchinterval()
    sys.setswitchinterval(1e-5)  # force frequent preemption
    try:
        for seed in range(6):
            rho = rho_of(seed, 11)
            tab = parallel_build(rho, workers=workers, yield_every=7)
            assert tab.occupied() == 1 << 11
            assert contents_equal(tab, serial_reference_table(rho))
    finally:
        sys.setswitchinterval(old)


def test_insert_probe_stats_accumulate():
    rho = rho_of(3, 10)
    stats = RecombineStats()
    parallel_build(rho, workers=2, stats=stats)
    assert stats.inserts == 1 << 10
    assert stats.insert_probes >= stats.inserts


def test_direct_parallel_insert_contract():
    table = SharedValueTable(capacity=16, width=3, rho_half=np.zeros(3))
    parallel_insert(0.5, 1, table)
    parallel_insert(0.5, 2, table)
    parallel_insert(0.45, 3, table)
    assert table.occupied() == 3
    table.publish()
    stored = sorted((v, p) for v, p in table.cells.values())
    assert stored == [(0.45, 3), (0.5, 1), (0.5, 2)]


def test_publish_freezes_readable_arrays():
    rho = rho_of(4, 8)
    tab = parallel_build(rho, workers=2)
    assert tab.published
    vt = tab.as_value_table()
    assert vt.sparse and vt.capacity == 2 << 8
    assert int(np.count_nonzero(vt.values >= 0)) == 1 << 8


def test_query_sweep_matches_serial_backend():
    for seed in (0, 5, 9):
        rng = random.Random(seed)
        n = 18
        vals = sorted(rng.random() for _ in range(n))
        rho = RhoVector.from_values(vals)
        na = n // 2
        rho_a = RhoVector.from_values(rho.values[:na])
        rho_b = RhoVector.from_values(rho.values[na:])
        tab = parallel_build(rho_b, workers=4)
        before = tab.checksum()
        got = parallel_query_sweep(rho_a, tab, 1e-6, workers=4)
        assert tab.checksum() == before  # read-only phase
        assert got.patterns == recombine_e(rho, 1e-6).patterns


@pytest.mark.parametrize("workers", [1, 2, 4, 16])
def test_parallel_recombine_matches_serial(workers):
    rho = RhoVector.from_values(sorted(random.Random(31).random() for _ in range(20)))
    assert parallel_recombine_e(rho, 1e-6, workers).patterns == recombine_e(rho, 1e-6).patterns


def test_empty_candidate_instance():
    # a rho with no nontrivial near-integer subset: every worker comes back empty
    rho = RhoVector.from_values([0.211, 0.322, 0.433, 0.544, 0.655, 0.766])
    got = parallel_recombine_e(rho, 1e-9, workers=4)
    assert got.nontrivial() == frozenset()


def test_end_to_end_factor_parity():
    polys = [
        gen_random_reducible(d, 100, seed=d) for d in (8, 12, 16, 20)
    ] + [IntPolynomial([1, 0, -10, 0, 1])]
    for p in polys:
        serial = factor(p, backend="e", workers=1)
        for w in (2, 4, 8):
            par = factor(p, backend="e", workers=w)
            assert par.factors == serial.factors
            assert par.certificate


def test_worker_validation():
    rho = rho_of(6, 6)
    with pytest.raises(ValueError):
        parallel_build(rho, workers=0)
    tab = parallel_build(rho, workers=1)
    with pytest.raises(ValueError):
        parallel_query_sweep(rho, tab, 1e-6, workers=0)


def test_sweep_requires_published_table():
    tab = SharedValueTable(capacity=8, width=2, rho_half=np.zeros(2))
    with pytest.raises(RuntimeError):
        parallel_query_sweep(rho_of(7, 2), tab, 1e-6, workers=1)
