"""Subset-sum recombination over the rho vector.

Five interchangeable backends search for bit patterns s whose selected
fractional parts sum to within eps of an integer:

  a  exhaustive scan of half the pattern space (the reference oracle)
  b  the same scan with provably-sound jumps over barren pattern runs
  c  meet in the middle: expand both halves, sort, sweep the matching line
  d  c with the comparison sort replaced by the linear-time splat sort
  e  splat one half only, stream the other, probe the table directly

Backends b..e discover candidates with a tiny slack band and then re-test
every find against the one canonical value() function, so all five return
bit-identical sets; differences in float association order can never leak
into the reported candidates.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import WidthExceeded
from .rootfinder import RootProfile

# absolute slack added to every discovery band before the canonical re-test;
# must dominate float64 association error of <=64-term sums (~1e-14)
GUARD = 1e-12

_A_WIDTH_LIMIT = 30
_A_CHUNK_BITS = 20
_B_WIDTH_LIMIT = 30


@dataclass(frozen=True)
class RhoVector:
    """The subset-sum instance: n fractional parts plus their prefix sums."""

    values: np.ndarray
    sigma: np.ndarray
    is_sorted: bool

    @classmethod
    def from_values(cls, values, sort: bool = False) -> "RhoVector":
        vals = np.asarray(values, dtype=np.float64)
        if vals.ndim != 1:
            raise ValueError("rho must be one-dimensional")
        if len(vals) and (vals.min() < 0.0 or vals.max() >= 1.0):
            raise ValueError("rho entries must lie in [0, 1)")
        if sort:
            vals = np.sort(vals)
        sigma = np.concatenate(([0.0], np.cumsum(vals)))
        srt = bool(np.all(np.diff(vals) >= 0)) if len(vals) else True
        return cls(values=vals, sigma=sigma, is_sorted=srt)

    @classmethod
    def from_profile(cls, profile: RootProfile) -> "RhoVector":
        return cls.from_values(profile.rho)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class CandidateSet:
    """Patterns that passed the canonical accept test, complement-canonicalized
    into the lower half space (min(s, ~s))."""

    patterns: frozenset[int]
    n: int

    def nontrivial(self) -> frozenset[int]:
        full = (1 << self.n) - 1
        return frozenset(s for s in self.patterns if s not in (0, full))

    def __len__(self) -> int:
        return len(self.patterns)


@dataclass
class RecombineStats:
    """Instrumentation counters surfaced by the bench command."""

    visited: int = 0
    inserts: int = 0
    insert_probes: int = 0
    queries: int = 0
    query_probes: int = 0
    find_steps: int = 0

    @property
    def probes_mean(self) -> float:
        return self.insert_probes / self.inserts if self.inserts else 0.0

    def merge(self, other: "RecombineStats") -> None:
        self.visited += other.visited
        self.inserts += other.inserts
        self.insert_probes += other.insert_probes
        self.queries += other.queries
        self.query_probes += other.query_probes
        self.find_steps += other.find_steps


def value(s: int, rho) -> float:
    """Canonical pattern value: fractional part of the selected sum,
    accumulated in ascending index order. Every backend's final membership
    test goes through this exact function."""
    vals = rho.values if isinstance(rho, RhoVector) else rho
    x = 0.0
    i = 0
    while s:
        if s & 1:
            x += vals[i]
        s >>= 1
        i += 1
    return x - math.floor(x)


def accept(y: float, eps: float) -> bool:
    """True when y in [0,1] is within eps of either integer end."""
    return y < eps or (1.0 - y) < eps


def subset_sums(values) -> np.ndarray:
    """Raw subset sums of all 2^len patterns, index == pattern.

    Built by doubling, which reproduces the ascending-order accumulation of
    value() bit for bit (before the final fractional reduction)."""
    sums = np.zeros(1, dtype=np.float64)
    for v in np.asarray(values, dtype=np.float64):
        sums = np.concatenate((sums, sums + v))
    return sums


def _value_list(s: int, vals: list) -> float:
    x = 0.0
    i = 0
    while s:
        if s & 1:
            x += vals[i]
        s >>= 1
        i += 1
    return x - math.floor(x)


def _canonical_filter(found, rho: RhoVector, eps: float) -> frozenset[int]:
    """Map each discovered pattern to min(s, ~s) and keep it only if the
    representative itself passes the canonical accept test. This is what
    pins backends b..e to backend a's exact output."""
    n = len(rho)
    full = (1 << n) - 1
    vals = rho.values.tolist()
    out = set()
    for s in found:
        t = min(s, s ^ full)
        if t in out:
            continue
        if accept(_value_list(t, vals), eps):
            out.add(t)
    return frozenset(out)


# ---------------------------------------------------------------------------
# backend a: exhaustive half-space scan


def recombine_a(rho: RhoVector, eps: float, stats: RecombineStats | None = None) -> CandidateSet:
    """Reference scan of every pattern s < 2^(n-1); the oracle for the rest."""
    n = len(rho)
    if n > _A_WIDTH_LIMIT:
        raise WidthExceeded(f"backend a handles n <= {_A_WIDTH_LIMIT}, got {n}")
    if n == 0:
        return CandidateSet(frozenset(), 0)
    bits = n - 1  # bit n-1 is never set below 2^(n-1)
    eps_d = eps + GUARD
    found: list[int] = []
    if bits <= _A_CHUNK_BITS:
        vals = subset_sums(rho.values[:bits])
        vals -= np.floor(vals)
        found = np.nonzero((vals < eps_d) | (vals > 1.0 - eps_d))[0].tolist()
    else:
        lo = subset_sums(rho.values[:_A_CHUNK_BITS])
        hi = subset_sums(rho.values[_A_CHUNK_BITS:bits])
        for h, base in enumerate(hi):
            v = lo + base
            v -= np.floor(v)
            idx = np.nonzero((v < eps_d) | (v > 1.0 - eps_d))[0]
            if len(idx):
                head = h << _A_CHUNK_BITS
                found.extend((head | int(i)) for i in idx)
    if stats is not None:
        stats.visited += 1 << bits
    return CandidateSet(_canonical_filter(found, rho, eps), n)


# ---------------------------------------------------------------------------
# backend b: jump scan
#
# After visiting s with value x, every pattern in (s, s + 2^j) only adds some
# subset of rho[0:j] (the trailing zeros of s make the additions carry-free),
# so its value stays inside [x + rho[0], x + sigma[j]]. The jump is sound
# when that interval cannot touch the accept bands: x + sigma[j] < 1 - eps
# keeps it off the upper band, and x + rho[0] >= eps keeps it off the lower
# one (otherwise step by 1). This is slightly tighter than a plain "< 1"
# cutoff, which could leap over patterns sitting inside the eps band.


def _scan_b_raw(rho, sig, n, eps, out):
    # kernel form: indexable float sequences and plain ints only, so the
    # same body runs jitted (ndarrays) and interpreted (lists)
    half = 1 << (n - 1)
    limit = 1.0 - eps
    rho0 = rho[0]
    s = 0
    cur = 0.0  # running raw subset sum for the current pattern
    visited = 0
    nout = 0
    cap = out.shape[0]
    resync = 0
    while s < half:
        visited += 1
        x = cur % 1.0
        if x < eps or x > limit:
            if nout < cap:
                out[nout] = s
            nout += 1
        if s == 0:
            c = n - 1
        else:
            c = 0
            t = s
            while t & 1 == 0:
                t >>= 1
                c += 1
        j = c
        lim = limit - x
        while j > 0 and sig[j] >= lim:
            j -= 1
        if j > 0 and x + rho0 < eps:
            j = 0
        s2 = s + (1 << j)
        changed = s ^ s2
        m = 0
        t = changed
        while t > 1:
            t >>= 1
            m += 1
        if m < n:
            cur += rho[m] - (sig[m] - sig[j])
        s = s2
        resync += 1
        if resync == 4096:
            # rebuild the running sum so float drift stays below the guard
            resync = 0
            cur = 0.0
            t = s
            i = 0
            while t:
                if t & 1:
                    cur += rho[i]
                t >>= 1
                i += 1
    return visited, nout


def _splat_raw(sums, values, patterns, k):
    # insert every (value, index) pair; returns total probe count
    probes = 0
    n = sums.shape[0]
    for s in range(n):
        x = sums[s]
        pattern = s
        i = int(k * x)
        steps = 0
        while steps <= k:
            steps += 1
            v = values[i]
            if v < 0.0:
                values[i] = x
                patterns[i] = pattern
                break
            if v > x:
                values[i] = x
                carried = patterns[i]
                patterns[i] = pattern
                x = v
                pattern = carried
            i += 1
            if i == k:
                i = 0
        probes += steps
    return probes


def _splat_merged_raw(sums, merged, k):
    # interleaved slot layout: merged[2i] holds the value, merged[2i+1] the
    # pattern as an exact float (half widths stay far below 2^53); one cache
    # line per slot instead of two. returns total probe count
    probes = 0
    n = sums.shape[0]
    for s in range(n):
        x = sums[s]
        pattern = float(s)
        i = int(k * x)
        steps = 0
        while steps <= k:
            steps += 1
            v = merged[2 * i]
            if v < 0.0:
                merged[2 * i] = x
                merged[2 * i + 1] = pattern
                break
            if v > x:
                merged[2 * i] = x
                carried = merged[2 * i + 1]
                merged[2 * i + 1] = pattern
                x = v
                pattern = carried
            i += 1
            if i == k:
                i = 0
        probes += steps
    return probes


def _stream_merged_raw(xs, merged, k, na, eps, out):
    # query 1 - x for every low-half value against the interleaved table;
    # returns (nout, probes)
    probes = 0
    nout = 0
    cap = out.shape[0]
    count = xs.shape[0]
    for s_a in range(count):
        t = (1.0 - xs[s_a]) % 1.0
        lo = (t - eps) % 1.0
        start = int(k * lo)
        span = (int(k * ((t + eps) % 1.0)) - start) % k
        i = start
        off = 0
        while off <= k:
            v = merged[2 * i]
            probes += 1
            if v < 0.0:
                if off >= span:
                    break
            else:
                delta = (v - t) % 1.0
                if delta < eps or delta > 1.0 - eps:
                    if nout < cap:
                        out[nout] = s_a | (int(merged[2 * i + 1]) << na)
                    nout += 1
            off += 1
            i += 1
            if i == k:
                i = 0
    return nout, probes


_JIT: dict = {}
_numba_checked = False


def _kernels():
    """Compiled kernels for the three hot loops, or an empty dict when numba
    is unavailable or disabled via POLYFACTOR_NO_NUMBA."""
    global _numba_checked
    if not _numba_checked:
        _numba_checked = True
        if not os.environ.get("POLYFACTOR_NO_NUMBA"):
            try:
                import numba

                _JIT["scan_b"] = numba.njit(cache=True)(_scan_b_raw)
                _JIT["splat"] = numba.njit(cache=True)(_splat_raw)
                _JIT["splat_merged"] = numba.njit(cache=True)(_splat_merged_raw)
                _JIT["stream_merged"] = numba.njit(cache=True)(_stream_merged_raw)
            except Exception:
                _JIT.clear()
    return _JIT


def _b_scanner():
    return _kernels().get("scan_b")


def recombine_b(rho: RhoVector, eps: float, stats: RecombineStats | None = None) -> CandidateSet:
    """Jump scan; visits only patterns the sigma rule cannot exclude, and
    returns exactly backend a's candidate set on the same sorted rho."""
    n = len(rho)
    if n > _B_WIDTH_LIMIT:
        raise WidthExceeded(f"backend b handles n <= {_B_WIDTH_LIMIT}, got {n}")
    if not rho.is_sorted:
        raise ValueError("backend b requires rho sorted non-decreasing")
    if n == 0:
        return CandidateSet(frozenset(), 0)
    eps_d = eps + GUARD
    cap = 1 << 17
    while True:
        buf = np.empty(cap, dtype=np.int64)
        fn = _b_scanner()
        if fn is not None:
            visited, nout = fn(
                np.ascontiguousarray(rho.values),
                np.ascontiguousarray(rho.sigma),
                n,
                eps_d,
                buf,
            )
        else:
            visited, nout = _scan_b_raw(rho.values.tolist(), rho.sigma.tolist(), n, eps_d, buf)
        if nout <= cap:
            break
        cap = max(cap * 4, nout)
    if stats is not None:
        stats.visited += int(visited)
    return CandidateSet(_canonical_filter(buf[:nout].tolist(), rho, eps), n)


def jump_width(s: int, x: float, rho: RhoVector, eps: float) -> int:
    """Width exponent j of the sound jump from pattern s with value x
    (backend b advances by 2^j). Exposed for the soundness property tests."""
    n = len(rho)
    sig = rho.sigma
    c = n - 1 if s == 0 else ((s & -s).bit_length() - 1)
    j = c
    lim = (1.0 - eps) - x
    while j > 0 and sig[j] >= lim:
        j -= 1
    if j > 0 and x + rho.values[0] < eps:
        j = 0
    return j


# ---------------------------------------------------------------------------
# value tables (dense for the sweep, sparse for the probe structure)

EMPTY = -1.0  # sentinel outside the value range [0, 1)


@dataclass
class ValueTable:
    """(value, pattern) store produced by expand or splat.

    Dense form: no empty cells, values non-decreasing. Sparse form: capacity
    2 * 2^width with EMPTY holes; occupied cells are circularly non-decreasing
    starting from the global minimum.
    """

    values: np.ndarray
    patterns: np.ndarray
    width: int
    sparse: bool

    @property
    def capacity(self) -> int:
        return len(self.values)

    def occupied(self) -> int:
        return int(np.count_nonzero(self.values >= 0.0))

    def content(self) -> tuple[np.ndarray, np.ndarray]:
        """Stored (value, pattern) multiset in a canonical order."""
        mask = self.values >= 0.0
        vals = self.values[mask]
        pats = self.patterns[mask]
        order = np.lexsort((pats, vals))
        return vals[order], pats[order]

    def compact(self) -> "ValueTable":
        """Drop empty cells, yielding the dense sorted form in linear time.

        Cells whose home slot lies after their position hold values that
        wrapped past the end of the table; they are all at least as large as
        every unwrapped value (a carried value can never pass a larger
        occupant), so moving them to the back restores sortedness."""
        if not self.sparse:
            return self
        mask = self.values >= 0.0
        pos = np.nonzero(mask)[0]
        vals = self.values[mask]
        pats = self.patterns[mask]
        home = np.floor(vals * self.capacity).astype(np.int64)
        wrapped = home > pos
        vals = np.concatenate((vals[~wrapped], vals[wrapped]))
        pats = np.concatenate((pats[~wrapped], pats[wrapped]))
        assert bool(np.all(np.diff(vals) >= 0)), "splat table lost its probe order"
        return ValueTable(values=vals, patterns=pats, width=self.width, sparse=False)


def expand(rho_half: RhoVector, stats: RecombineStats | None = None) -> ValueTable:
    """All 2^len half-pattern values, stable-sorted by (value, pattern)."""
    m = len(rho_half)
    if m > 32:
        raise WidthExceeded(f"expand handles half widths <= 32, got {m}")
    sums = subset_sums(rho_half.values)
    sums -= np.floor(sums)
    order = np.argsort(sums, kind="stable")
    if stats is not None:
        stats.visited += 1 << m
    return ValueTable(
        values=sums[order],
        patterns=order.astype(np.int64),
        width=m,
        sparse=False,
    )


def _insert(values, patterns, k: int, x: float, pattern: int) -> int:
    """Place x near slot floor(k*x), carrying displaced larger values forward
    with circular wraparound. Returns the number of cells examined."""
    i = int(k * x)
    probes = 0
    while probes <= k:
        probes += 1
        v = values[i]
        if v < 0.0:
            values[i] = x
            patterns[i] = pattern
            return probes
        if v > x:
            values[i] = x
            carried = patterns[i]
            patterns[i] = pattern
            x = v
            pattern = carried
        i += 1
        if i == k:
            i = 0
    raise RuntimeError("splat table full; fill ratio contract violated")


def insert(x: float, pattern: int, table: ValueTable, stats: RecombineStats | None = None) -> None:
    """Public single insertion into a sparse table."""
    if not table.sparse:
        raise ValueError("insert requires a sparse table")
    probes = _insert(table.values, table.patterns, table.capacity, x, pattern)
    if stats is not None:
        stats.inserts += 1
        stats.insert_probes += probes


def _splat_arrays(sums: np.ndarray) -> tuple[np.ndarray, np.ndarray, int, int]:
    """Sparse table arrays for a prepared value vector; returns
    (values, patterns, capacity, probe_count)."""
    count = len(sums)
    k = 2 * count
    fn = _kernels().get("splat")
    if fn is not None:
        values = np.full(k, EMPTY, dtype=np.float64)
        patterns = np.zeros(k, dtype=np.int64)
        probes = int(fn(sums, values, patterns, k))
        return values, patterns, k, probes
    xs = sums.tolist()
    vlist = [EMPTY] * k
    plist = [0] * k
    probes = 0
    for s, x in enumerate(xs):
        probes += _insert(vlist, plist, k, x, s)
    return (
        np.array(vlist, dtype=np.float64),
        np.array(plist, dtype=np.int64),
        k,
        probes,
    )


def splat(rho_half: RhoVector, stats: RecombineStats | None = None) -> ValueTable:
    """Distribution-sort all half-pattern values into a table of twice their
    count; expected constant probes per insertion at this fill ratio."""
    m = len(rho_half)
    if m > 31:
        raise WidthExceeded(f"splat handles half widths <= 31, got {m}")
    sums = subset_sums(rho_half.values)
    sums -= np.floor(sums)
    values, patterns, _, probes = _splat_arrays(sums)
    if stats is not None:
        stats.inserts += len(sums)
        stats.insert_probes += probes
        stats.visited += len(sums)
    return ValueTable(values=values, patterns=patterns, width=m, sparse=True)


def _probe_window(values, patterns, k: int, t: float, eps: float, first_only: bool = False):
    """All stored patterns whose value lies within eps of t, circularly.

    Every stored value sits at or after its home slot with the cells in
    between occupied, so the walk starts at the home slot of (t - eps) and
    only an empty cell past the window's own slot range proves completion.
    Value ordering is deliberately not used as a stop condition: chains that
    wrapped past the table end interleave with small values near slot zero.
    Returns (hits, probes).
    """
    lo = (t - eps) % 1.0
    start = int(k * lo)
    span = (int(k * ((t + eps) % 1.0)) - start) % k
    i = start
    off = 0
    probes = 0
    hits: list[int] = []
    while off <= k:
        v = values[i]
        probes += 1
        if v < 0.0:
            if off >= span:
                break
        else:
            delta = (v - t) % 1.0
            if delta < eps or delta > 1.0 - eps:
                hits.append(patterns[i])
                if first_only:
                    break
        off += 1
        i += 1
        if i == k:
            i = 0
    return hits, probes


def query(
    x: float, table: ValueTable, eps: float, stats: RecombineStats | None = None
) -> int | None:
    """First stored pattern whose value is within eps of x (wraparound at 0/1
    honored), or None. The probe cost matches the insertion bound."""
    if not table.sparse:
        raise ValueError("query requires the sparse (uncompacted) table form")
    hits, probes = _probe_window(
        table.values, table.patterns, table.capacity, x % 1.0, eps, first_only=True
    )
    if stats is not None:
        stats.queries += 1
        stats.query_probes += probes
    return int(hits[0]) if hits else None


# ---------------------------------------------------------------------------
# meet-in-the-middle sweep


def find(
    alpha: ValueTable,
    beta: ValueTable,
    eps: float,
    stats: RecombineStats | None = None,
) -> set[int]:
    """All concatenated patterns with alpha_i + beta_j within the accept
    bands, from one sweep along the alpha + beta = 1 line plus the two corner
    bands at 0 and 2 (which a pure staircase would miss). Duplicate-value
    neighborhoods are fully enumerated. Raw discovery output; the caller
    applies the canonical filter."""
    if alpha.sparse or beta.sparse:
        raise ValueError("find requires dense sorted tables")
    a, b = alpha.values, beta.values
    apat, bpat = alpha.patterns, beta.patterns
    wa = alpha.width
    eps_d = eps + GUARD
    out: set[int] = set()

    def emit(i: int, j: int) -> None:
        out.add(int(apat[i]) | (int(bpat[j]) << wa))

    # middle band: alpha + beta crosses 1
    starts = np.searchsorted(a, (1.0 - eps_d) - b, side="right")
    ends = np.searchsorted(a, (1.0 + eps_d) - b, side="left")
    for j in np.nonzero(ends > starts)[0]:
        for i in range(starts[j], ends[j]):
            emit(i, int(j))
    # low corner: both halves tiny
    jmax = int(np.searchsorted(b, eps_d, side="left"))
    for j in range(jmax):
        for i in range(int(np.searchsorted(a, eps_d - b[j], side="left"))):
            emit(i, j)
    # high corner: alpha + beta approaches 2
    if len(a):
        jmin = int(np.searchsorted(b, (2.0 - eps_d) - a[-1], side="right"))
        for j in range(jmin, len(b)):
            for i in range(int(np.searchsorted(a, (2.0 - eps_d) - b[j], side="right")), len(a)):
                emit(i, j)
    if stats is not None:
        stats.find_steps += len(a) + len(b)
    return out


def _split(rho: RhoVector) -> tuple[RhoVector, RhoVector]:
    n = len(rho)
    na = n // 2
    return (
        RhoVector.from_values(rho.values[:na]),
        RhoVector.from_values(rho.values[na:]),
    )


def _guard_width(n: int, half_limit: int) -> None:
    if n > 64:
        raise WidthExceeded(f"pattern width is capped at 64 bits, got {n}")
    if n - n // 2 > half_limit:
        raise WidthExceeded(f"half width {n - n // 2} exceeds backend limit {half_limit}")


def recombine_c(rho: RhoVector, eps: float, stats: RecombineStats | None = None) -> CandidateSet:
    """Expand both halves, sort, sweep."""
    n = len(rho)
    _guard_width(n, 32)
    if n < 2:
        return recombine_a(rho, eps, stats)
    rho_a, rho_b = _split(rho)
    alpha = expand(rho_a, stats)
    beta = expand(rho_b, stats)
    raw = find(alpha, beta, eps, stats)
    return CandidateSet(_canonical_filter(raw, rho, eps), n)


def recombine_d(rho: RhoVector, eps: float, stats: RecombineStats | None = None) -> CandidateSet:
    """Splat-sort both halves, compact, sweep."""
    n = len(rho)
    _guard_width(n, 31)
    if n < 2:
        return recombine_a(rho, eps, stats)
    rho_a, rho_b = _split(rho)
    alpha = splat(rho_a, stats).compact()
    beta = splat(rho_b, stats).compact()
    raw = find(alpha, beta, eps, stats)
    return CandidateSet(_canonical_filter(raw, rho, eps), n)


def recombine_e(rho: RhoVector, eps: float, stats: RecombineStats | None = None) -> CandidateSet:
    """Splat the high half only (kept sparse) and stream the low half's
    patterns through the probe structure; the most parallel-friendly form."""
    n = len(rho)
    _guard_width(n, 31)
    if n < 2:
        return recombine_a(rho, eps, stats)
    rho_a, rho_b = _split(rho)
    na = len(rho_a)
    eps_d = eps + GUARD

    bsums = subset_sums(rho_b.values)
    bsums -= np.floor(bsums)
    asums = subset_sums(rho_a.values)
    asums -= np.floor(asums)
    k = 2 * len(bsums)

    raw: list[int] = []
    kernels = _kernels()
    if "stream_merged" in kernels:
        merged = np.empty(2 * k, dtype=np.float64)
        merged[0::2] = EMPTY
        insert_probes = int(kernels["splat_merged"](bsums, merged, k))
        cap = 1 << 16
        while True:
            out = np.empty(cap, dtype=np.int64)
            nout, probes_total = kernels["stream_merged"](asums, merged, k, na, eps_d, out)
            if nout <= cap:
                raw = out[:nout].tolist()
                break
            cap = max(cap * 4, int(nout))
    else:
        bvalues, bpatterns, k, insert_probes = _splat_arrays(bsums)
        xs = asums.tolist()
        bvals = bvalues.tolist()
        bpats = bpatterns.tolist()
        probes_total = 0
        for s_a, x in enumerate(xs):
            hits, probes = _probe_window(bvals, bpats, k, (1.0 - x) % 1.0, eps_d)
            probes_total += probes
            for pb in hits:
                raw.append(s_a | (pb << na))
    if stats is not None:
        stats.inserts += len(bsums)
        stats.insert_probes += insert_probes
        stats.visited += len(bsums) + len(asums)
        stats.queries += len(asums)
        stats.query_probes += int(probes_total)
    return CandidateSet(_canonical_filter(raw, rho, eps), n)


BACKENDS = {
    "a": recombine_a,
    "b": recombine_b,
    "c": recombine_c,
    "d": recombine_d,
    "e": recombine_e,
}


# ---------------------------------------------------------------------------
# cost estimators


def predict_beta(n: int) -> tuple[float, float]:
    """Expected visited-pattern ratio of the exhaustive scan to the jump scan.

    Returns (iterative, closed_form): the iterative value runs the jump-count
    recursion with E(sigma_k) = k^2/2n down from the largest jump width
    l = floor(sqrt(2n)); the closed form collapses it to 2^l / l.
    """
    if n < 2:
        raise ValueError("predict_beta requires n >= 2")
    l = math.isqrt(2 * n)
    closed = (2.0**l) / l
    total = 1 << (n - 1)
    remaining = total
    counts = [0] * (l + 1)
    for i in range(l, -1, -1):
        # floor(remaining * (1 - i^2/2n) / 2^i), kept in exact ints
        num = remaining * (2 * n - i * i)
        counts[i] = num // (2 * n * (1 << i))
        remaining -= counts[i] << i
    visits = sum(counts)
    covered = sum(m << i for i, m in enumerate(counts))
    iterative = covered / visits if visits else 1.0
    return iterative, closed


def splat_cost_bounds(c: float) -> tuple[float, float]:
    """(lower, upper) bounds on expected probes per insertion when the table
    is oversized by factor c: (c ln(c/(c-1)), c/(c-1))."""
    if c <= 1:
        raise ValueError("oversize factor must exceed 1")
    return c * math.log(c / (c - 1.0)), c / (c - 1.0)


# ---------------------------------------------------------------------------
# optional fixed-point mode


@dataclass(frozen=True)
class FixedPointConfig:
    """Integer-lattice variant of value/accept: rho scaled to Z_M.

    With M = 2^32 the scan is bit-exact across platforms and worker counts,
    which is what the reproducibility tests use. Note that floor scaling
    spreads an exact integer sum across residues {0, M-1, .., M-n+1}, so the
    literal accept (slack=1) only sees sums whose quantization loss is <= 1;
    pass slack=n to cover every exact subset sum of an n-wide instance.
    """

    modulus: int = 1 << 32

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be at least 2")

    def supports_eps(self, eps: float) -> bool:
        return self.modulus > 1.0 / eps

    def scale(self, rho: RhoVector) -> np.ndarray:
        return np.floor(rho.values * self.modulus).astype(np.int64)

    def value(self, s: int, scaled: np.ndarray) -> int:
        total = 0
        i = 0
        while s:
            if s & 1:
                total += int(scaled[i])
            s >>= 1
            i += 1
        return total % self.modulus

    def accept(self, y: int, slack: int = 1) -> bool:
        return y < slack or y >= self.modulus - slack
