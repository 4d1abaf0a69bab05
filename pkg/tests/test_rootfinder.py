import math
import random

import numpy as np
import pytest

from polyfactor.errors import NonConvergence, UnpairedComplexRoot
from polyfactor.polynomial import IntPolynomial, gen_swinnerton_dyer
from polyfactor.rootfinder import (
    ToleranceConfig,
    build_profile,
    expected_n,
    expected_real_roots,
    find_roots,
    frac,
    profile_polynomial,
    residual_bound,
)

P = IntPolynomial
CFG = ToleranceConfig()

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)


def test_frac():
    assert frac(2.0) == 0.0
    assert frac(-0.25) == 0.75
    assert abs(frac(1.41421356) - 0.41421356) < 1e-12


def test_roots_sqrt2():
    roots = find_roots(P([-2, 0, 1]), CFG)
    assert sorted(z.real for z in roots) == pytest.approx([-SQRT2, SQRT2], abs=1e-12)
    assert all(z.imag == 0 for z in roots)


def test_roots_pure_imaginary():
    roots = find_roots(P([1, 0, 1]), CFG)
    assert sorted(z.imag for z in roots) == pytest.approx([-1.0, 1.0], abs=1e-12)
    assert all(abs(z.real) < 1e-12 for z in roots)


def test_roots_radical_sums():
    # roots of x^4 - 10x^2 + 1 are the four sign combinations of sqrt2 +- sqrt3
    roots = find_roots(P([1, 0, -10, 0, 1]), CFG)
    got = sorted(z.real for z in roots)
    want = sorted([SQRT2 + SQRT3, SQRT3 - SQRT2, -(SQRT3 - SQRT2), -(SQRT2 + SQRT3)])
    assert got == pytest.approx(want, abs=1e-10)
    assert want[-1] == pytest.approx(3.14626436994, abs=1e-9)
    assert want[2] == pytest.approx(0.31783724519, abs=1e-9)


def test_conjugate_closure_and_residual():
    rng = random.Random(5)
    for d in (6, 13, 27, 54):
        p = P([rng.randint(-100, 100) for _ in range(d)] + [1])
        roots = find_roots(p, CFG)
        assert len(roots) == d
        # symmetrization makes pairs exact mirrors
        ups = sorted((z for z in roots if z.imag > 0), key=lambda z: (z.real, z.imag))
        downs = sorted((z.conjugate() for z in roots if z.imag < 0), key=lambda z: (z.real, z.imag))
        assert np.allclose(np.array(ups), np.array(downs), rtol=0, atol=0)
        for z in roots:
            assert abs(p.evaluate(complex(z))) <= residual_bound(p, complex(z), CFG.root_tol)


def test_degree_one():
    roots = find_roots(P([7, 1]), CFG)
    assert roots == pytest.approx([-7.0 + 0j])


def test_nonconvergence_surfaces():
    cfg = ToleranceConfig(max_iterations=1, root_tol=1e-15)
    with pytest.raises(NonConvergence):
        find_roots(P([rng_c for rng_c in (-73, 12, 55, -9, 1, 44, 1)]), cfg)


def test_profile_mixed_real_and_pairs():
    # (x^2 - 2)(x^2 + 1): reals +-sqrt2, one pair with sum 0
    p = P([-2, 0, -1, 0, 1])
    prof = profile_polynomial(p, CFG)
    assert prof.r == 2 and prof.c == 1
    assert prof.r + 2 * prof.c == p.degree
    assert sorted(prof.rho.tolist()) == pytest.approx([0.0, 0.41421356, 0.58578644], abs=1e-8)
    assert sorted(prof.perm) == [0, 1, 2]


def test_profile_pair_sum_two():
    # x^2 - 2x + 2 has roots 1 +- i; pair sum 2 -> frac 0
    prof = profile_polynomial(P([2, -2, 1]), CFG)
    assert prof.r == 0 and prof.c == 1
    assert prof.pair_sums.tolist() == pytest.approx([2.0], abs=1e-12)
    assert prof.rho.tolist() == pytest.approx([0.0], abs=1e-12)


def test_profile_negative_pair_sum():
    # synthetic pair with sum -0.25 -> rho entry 0.75
    roots = np.array([-0.125 + 0.8j, -0.125 - 0.8j])
    prof = build_profile(roots, CFG)
    assert prof.rho.tolist() == pytest.approx([0.75], abs=1e-12)
    assert prof.pair_products.tolist() == pytest.approx([0.125**2 + 0.64], abs=1e-12)


def test_profile_unpaired_root_raises():
    with pytest.raises(UnpairedComplexRoot):
        build_profile(np.array([1.0 + 1.0j, 2.0 - 1.0j, 0.5]), CFG)
    with pytest.raises(UnpairedComplexRoot):
        build_profile(np.array([1.0 + 1.0j]), CFG)


def test_rho_sum_matches_trace(monkeypatch=None):
    # sum of all rho entries must agree with frac(-a_{d-1}) up to eps
    rng = random.Random(9)
    for _ in range(20):
        d = rng.randint(3, 24)
        p = P([rng.randint(-50, 50) for _ in range(d)] + [1])
        prof = profile_polynomial(p, CFG)
        total = frac(float(np.sum(prof.rho)))
        want = frac(-p.coeffs[-2])
        delta = abs(total - want)
        assert min(delta, 1 - delta) < 1e-6


def test_perm_recovers_entities():
    p = P([-2, 0, -1, 0, 1])
    prof = profile_polynomial(p, CFG)
    for i, ent in enumerate(prof.perm):
        if ent < prof.r:
            assert frac(float(prof.real_roots[ent])) == pytest.approx(float(prof.rho[i]))
        else:
            assert frac(float(prof.pair_sums[ent - prof.r])) == pytest.approx(float(prof.rho[i]))


def test_expected_real_roots_values():
    assert expected_real_roots(1) == 0.0
    assert expected_real_roots(100) == pytest.approx(2.93174, abs=1e-4)
    assert expected_real_roots(math.e**math.pi) == pytest.approx(2.0, abs=1e-12)
    with pytest.raises(ValueError):
        expected_real_roots(0)


def test_expected_n_values():
    assert expected_n(1) == 0.5
    assert expected_n(2) == pytest.approx(1.22064, abs=1e-4)
    assert expected_n(100) == pytest.approx(51.46587, abs=1e-4)


def test_real_root_count_trend_smoke():
    # small-sample version of the full trend check in the acceptance suite
    rng = random.Random(17)
    d = 20
    cfg = ToleranceConfig(precision="double")
    counts = []
    for _ in range(120):
        p = P([rng.randint(-100, 100) for _ in range(d)] + [1])
        roots = find_roots(p, cfg)
        counts.append(int(sum(1 for z in roots if z.imag == 0)))
    mean = sum(counts) / len(counts)
    assert abs(mean - expected_real_roots(d)) < 2.5


def test_extended_precision_tier():
    cfg = ToleranceConfig(precision="extended")
    roots = find_roots(P([-2, 0, 1]), cfg)
    assert sorted(z.real for z in roots) == pytest.approx([-SQRT2, SQRT2], abs=1e-14)


def test_swinnerton_dyer_roots_all_real():
    f4 = gen_swinnerton_dyer(4)
    roots = find_roots(f4, CFG)
    assert all(z.imag == 0 for z in roots)
    assert len(roots) == 16


def test_config_validation():
    with pytest.raises(ValueError):
        ToleranceConfig(eps=0.7)
    with pytest.raises(ValueError):
        ToleranceConfig(root_tol=0)
    with pytest.raises(ValueError):
        ToleranceConfig(precision="quad")
