"""Numerical root finding and root classification.

The solver is a simultaneous (all roots at once) fixed-point iteration with a
Newton polish, started on a perturbed circle inside the Cauchy bound. Above
degree 50 it switches to 80-bit extended floats when the platform has them,
so that sums of ~50 fractional parts still resolve integers well below the
acceptance tolerance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonConvergence, UnpairedComplexRoot
from .polynomial import IntPolynomial

_HAS_EXTENDED = np.finfo(np.longdouble).nmant > 52
_EXTENDED_DEGREE = 50  # switch point for the auto precision tier


@dataclass(frozen=True)
class ToleranceConfig:
    """Numeric tolerances for the whole pipeline.

    eps drives candidate acceptance (how close a subset sum must be to an
    integer), root_tol stops the root iteration, imag_threshold separates
    real roots from conjugate pairs (scaled by root magnitude).
    """

    eps: float = 1e-6
    root_tol: float = 1e-12
    imag_threshold: float = 1e-9
    precision: str = "auto"  # auto | double | extended
    max_iterations: int = 500

    def __post_init__(self):
        if not 0 < self.eps < 0.5:
            raise ValueError("eps must be in (0, 0.5)")
        if self.root_tol <= 0:
            raise ValueError("root_tol must be positive")
        if self.imag_threshold <= 0:
            raise ValueError("imag_threshold must be positive")
        if self.precision not in ("auto", "double", "extended"):
            raise ValueError("precision must be auto, double, or extended")

    def complex_dtype(self, degree: int):
        if self.precision == "double":
            return np.complex128
        if self.precision == "extended":
            return np.clongdouble if _HAS_EXTENDED else np.complex128
        if degree > _EXTENDED_DEGREE and _HAS_EXTENDED:
            return np.clongdouble
        return np.complex128


@dataclass(frozen=True)
class RootProfile:
    """Classified roots of one square-free polynomial.

    rho holds the fractional parts of the r real roots and the c conjugate
    pair sums, sorted non-decreasing; perm[i] names the root behind rho[i]
    (0..r-1 are real-root ids, r..r+c-1 are pair ids). Pair sums and products
    are kept so candidate factors can be rebuilt from a bit pattern.
    """

    real_roots: np.ndarray
    pair_sums: np.ndarray
    pair_products: np.ndarray
    rho: np.ndarray
    perm: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.real_roots)

    @property
    def c(self) -> int:
        return len(self.pair_sums)

    @property
    def n(self) -> int:
        return self.r + self.c


def _to_float(value: int, dtype) -> float:
    # big ints overflow float(); split off the low bits first
    if abs(value) < (1 << 62):
        return dtype(value)
    shift = value.bit_length() - 62
    return dtype(value >> shift) * dtype(2.0) ** shift


def frac(x: float) -> float:
    """Fractional part in [0, 1); frac(-0.25) == 0.75."""
    return float(x) - math.floor(x)


def find_roots(p: IntPolynomial, cfg: ToleranceConfig | None = None) -> np.ndarray:
    """All d complex roots of a square-free polynomial, conjugate symmetrized.

    Real roots come back with exactly zero imaginary part; complex roots in
    exact conjugate pairs (each pair averaged with its mirror). Raises
    NonConvergence if the iteration cannot reach root_tol.
    """
    cfg = cfg or ToleranceConfig()
    d = p.degree
    if d < 1:
        raise ValueError("find_roots requires degree >= 1")
    if p.is_zero():
        raise ValueError("zero polynomial has no root set")
    cdtype = cfg.complex_dtype(d)
    rdtype = np.longdouble if cdtype == np.clongdouble else np.float64

    c = np.array([_to_float(a, rdtype) for a in p.coeffs], dtype=cdtype)
    c = c / c[-1]
    if d == 1:
        z = np.array([-c[0]], dtype=cdtype)
    else:
        z = _aberth(c, cfg, cdtype)
    z = _newton_polish(c, z)
    return _symmetrize(np.asarray(z, dtype=np.complex128), cfg)


def _aberth(c: np.ndarray, cfg: ToleranceConfig, cdtype) -> np.ndarray:
    d = len(c) - 1
    dc = c[1:] * np.arange(1, d + 1, dtype=cdtype)
    cauchy = 1.0 + float(np.max(np.abs(c[:-1])))
    inner = 1.0 + abs(complex(c[0])) ** (1.0 / d)
    rad = min(cauchy, inner)
    k = np.arange(d)
    # irrational-ish angle offset and radius jitter break conjugate lockstep
    ang = 2 * np.pi * k / d + 0.4
    z = (rad * np.exp(1j * ang) * (1 + 0.08 * np.cos(3.7 * k + 1.2))).astype(cdtype)

    tiny = np.finfo(cdtype).tiny
    for _ in range(cfg.max_iterations):
        pv = np.zeros(d, dtype=cdtype)
        for a in c[::-1]:
            pv = pv * z + a
        dv = np.zeros(d, dtype=cdtype)
        for a in dc[::-1]:
            dv = dv * z + a
        dv = np.where(dv == 0, tiny, dv)
        w = pv / dv
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        s = (1.0 / diff).sum(axis=1)
        denom = 1.0 - w * s
        denom = np.where(denom == 0, tiny, denom)
        corr = w / denom
        z = z - corr
        step = np.max(np.abs(corr) / np.maximum(1.0, np.abs(z)))
        if step < cfg.root_tol:
            return z
    raise NonConvergence(
        f"root iteration did not reach {cfg.root_tol:g} within {cfg.max_iterations} sweeps"
    )


def _newton_polish(c: np.ndarray, z: np.ndarray, rounds: int = 2) -> np.ndarray:
    d = len(c) - 1
    dc = c[1:] * np.arange(1, d + 1, dtype=c.dtype)
    for _ in range(rounds):
        pv = np.zeros_like(z)
        for a in c[::-1]:
            pv = pv * z + a
        dv = np.zeros_like(z)
        for a in dc[::-1]:
            dv = dv * z + a
        safe = dv != 0
        z = np.where(safe, z - pv / np.where(safe, dv, 1.0), z)
    return z


def _symmetrize(z: np.ndarray, cfg: ToleranceConfig) -> np.ndarray:
    scale = np.maximum(1.0, np.abs(z))
    real_mask = np.abs(z.imag) <= cfg.imag_threshold * scale
    reals = np.sort(z.real[real_mask])
    rest = z[~real_mask]
    uppers = sorted((w for w in rest if w.imag > 0), key=lambda w: (w.real, w.imag))
    lowers = [w for w in rest if w.imag <= 0]
    if len(uppers) != len(lowers):
        raise UnpairedComplexRoot(f"{len(uppers)} upper vs {len(lowers)} lower half-plane roots")
    pairs = []
    for u in uppers:
        target = u.conjugate()
        best = min(range(len(lowers)), key=lambda i: abs(lowers[i] - target))
        partner = lowers.pop(best)
        if abs(partner - target) > 1e-6 * max(1.0, abs(u)):
            raise UnpairedComplexRoot(f"no conjugate partner for root {u}")
        avg = (u + partner.conjugate()) / 2
        pairs.append(avg)
    pairs.sort(key=lambda w: (w.real, w.imag))
    out = np.empty(len(z), dtype=np.complex128)
    out[: len(reals)] = reals
    for j, w in enumerate(pairs):
        out[len(reals) + 2 * j] = w
        out[len(reals) + 2 * j + 1] = w.conjugate()
    return out


def build_profile(roots: np.ndarray, cfg: ToleranceConfig | None = None) -> RootProfile:
    """Classify a conjugate-closed root multiset and build the sorted rho vector.

    Real roots contribute frac(u); each conjugate pair contributes
    frac(z + conj(z)) once. Raises UnpairedComplexRoot when a complex root
    has no partner within tolerance.
    """
    cfg = cfg or ToleranceConfig()
    z = np.asarray(roots, dtype=np.complex128)
    scale = np.maximum(1.0, np.abs(z))
    real_mask = np.abs(z.imag) <= cfg.imag_threshold * scale
    reals = np.sort(z.real[real_mask])
    rest = list(z[~real_mask])
    uppers = sorted((w for w in rest if w.imag > 0), key=lambda w: (w.real, w.imag))
    lowers = [w for w in rest if w.imag <= 0]
    if len(uppers) != len(lowers):
        raise UnpairedComplexRoot(f"{len(uppers)} upper vs {len(lowers)} lower half-plane roots")
    sums, prods = [], []
    for u in uppers:
        target = u.conjugate()
        if not lowers:
            raise UnpairedComplexRoot(f"no conjugate partner for root {u}")
        best = min(range(len(lowers)), key=lambda i: abs(lowers[i] - target))
        partner = lowers.pop(best)
        if abs(partner - target) > 1e-6 * max(1.0, abs(u)):
            raise UnpairedComplexRoot(f"no conjugate partner for root {u}")
        w = (u + partner.conjugate()) / 2
        sums.append(float(2.0 * w.real))
        prods.append(float(abs(w) ** 2))

    entries = [(frac(u), i) for i, u in enumerate(reals)]
    entries += [(frac(s), len(reals) + j) for j, s in enumerate(sums)]
    entries.sort()
    rho = np.array([e[0] for e in entries], dtype=np.float64)
    perm = tuple(e[1] for e in entries)
    return RootProfile(
        real_roots=np.asarray(reals, dtype=np.float64),
        pair_sums=np.asarray(sums, dtype=np.float64),
        pair_products=np.asarray(prods, dtype=np.float64),
        rho=rho,
        perm=perm,
    )


def profile_polynomial(p: IntPolynomial, cfg: ToleranceConfig | None = None) -> RootProfile:
    """find_roots followed by build_profile."""
    cfg = cfg or ToleranceConfig()
    return build_profile(find_roots(p, cfg), cfg)


def expected_real_roots(d) -> float:
    """Leading term of the expected real-root count of a random degree d
    polynomial, (2/pi) ln d; the O(1) constant is excluded."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    return (2.0 / math.pi) * math.log(d)


def expected_n(d) -> float:
    """Expected subset-sum instance size for degree d: d/2 + (1/pi) ln d."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    return d / 2.0 + math.log(d) / math.pi


def residual_bound(p: IntPolynomial, root: complex, root_tol: float) -> float:
    """Acceptance envelope for |p(root)|: root_tol * max|a_i| * max(1,|root|)^d."""
    amax = max(abs(c) for c in p.coeffs)
    return root_tol * amax * max(1.0, abs(root)) ** p.degree
