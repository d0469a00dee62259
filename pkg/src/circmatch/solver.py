"""Top-level solvers: brute force, anchor sweep, windowed sample algorithm."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .anchors import MarkTable, anchor_match, build_context, heavy_anchors
from .index import TextIndex
from .intervals import union_chains, union_intervals
from .periodic import (
    find_runs,
    run_sample_matching,
    sample_match_nonperiodic,
    split_samples,
)
from .sequences import OccurrenceReport, Sequence, as_symbols, brute_force_cpm

ALGORITHMS = ("naive", "anchor_sweep", "sample_k4", "auto")
_KERNEL_MIN_ANCHORS = 2048  # below this the per-anchor python path is fine


@dataclass(frozen=True)
class SolverConfig:
    algorithm: str = "auto"
    want_witness: bool = False
    parallel_windows: bool = False

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")


@dataclass(frozen=True)
class WindowPlan:
    """Text windows of length <= 2m starting at multiples of m."""

    windows: tuple[tuple[int, int], ...]


def plan_windows(n: int, m: int) -> WindowPlan:
    if m < 1 or m > n:
        raise ValueError("need 1 <= m <= n")
    out = []
    for start in range(0, n, m):
        out.append((start, min(2 * m, n - start)))
    return WindowPlan(tuple(out))


@dataclass(frozen=True)
class AlphabetMap:
    """Dense ranks for the pattern letters; anything else maps to one foreign rank.

    Ranks follow the sorted order of the pattern letters, which keeps the
    mapping deterministic; circular distances are unchanged because the map
    is injective on pattern letters and foreign letters can never match.
    """

    letters: np.ndarray  # sorted unique pattern letters

    @property
    def foreign_rank(self) -> int:
        return int(self.letters.size)

    def apply(self, arr: np.ndarray) -> np.ndarray:
        pos = np.searchsorted(self.letters, arr)
        safe = np.minimum(pos, self.letters.size - 1)
        hit = self.letters[safe] == arr
        return np.where(hit, safe, self.foreign_rank).astype(np.int32)


def build_alphabet_map(pattern) -> AlphabetMap:
    p = as_symbols(pattern)
    if p.size == 0:
        raise ValueError("empty pattern")
    return AlphabetMap(np.unique(p))


def remap(window, amap: AlphabetMap) -> Sequence:
    """Window letters replaced by pattern ranks (foreign letters by the spare rank)."""
    arr = amap.apply(as_symbols(window))
    return Sequence(arr, amap.foreign_rank + 1)


# -- per-window engines ------------------------------------------------------


def _sweep_scalar(p_r, w_r, k, prov):
    m, wlen = p_r.size, w_r.size
    ctx = build_context(p_r, w_r, k)
    intervals = []
    for a in range(wlen):
        for iv in anchor_match(ctx, a):
            intervals.append(iv)
            if prov is not None:
                for pos in range(iv.lo, iv.hi + 1):
                    prov.setdefault(pos, ("anchor", a))
    merged = union_intervals(intervals, wlen - m)
    return [v for iv in merged for v in range(iv.lo, iv.hi + 1)]


def _sweep_kernel(p_r, w_r, k):
    m, wlen = p_r.size, w_r.size
    top = m + 2  # remapped ranks are < m+1
    base = np.concatenate([p_r, p_r, [top], w_r, [top + 1]]).astype(np.int32)
    idx = TextIndex(base)
    diff = np.zeros(wlen + 2, dtype=np.int64)
    _kernels.sweep_anchors(
        idx.fwd.rank,
        idx.fwd.table,
        idx.bwd.rank,
        idx.bwd.table,
        idx.loglut,
        idx.n,
        m,
        2 * m + 1,
        wlen,
        k,
        diff,
    )
    cov = np.cumsum(diff[: wlen - m + 1])
    return np.flatnonzero(cov >= 1).tolist()


def _window_anchor_sweep(p_r, w_r, k, prov=None):
    m, wlen = p_r.size, w_r.size
    if wlen < m:
        return []
    if prov is None and (_kernels.HAVE_NUMBA or wlen >= _KERNEL_MIN_ANCHORS):
        return _sweep_kernel(p_r, w_r, k)
    return _sweep_scalar(p_r, w_r, k, prov)


def _window_sample_k4(p_r, w_r, k, prov=None):
    m, wlen = p_r.size, w_r.size
    if wlen < m:
        return []
    if m < 2 * k + 3:
        return _window_anchor_sweep(p_r, w_r, k, prov)
    ctx = build_context(p_r, w_r, k)
    marks = MarkTable(wlen, m, k)
    chains = []
    origins = []
    for sample in split_samples(p_r, k):
        if sample.periodic:
            for run in find_runs(ctx, sample):
                _, ch = run_sample_matching(
                    ctx, sample, run, marks=marks, chain_origins=origins
                )
                chains.extend(ch)
        else:
            sample_match_nonperiodic(ctx, sample, marks=marks)
    intervals = []
    for a in heavy_anchors(marks):
        for iv in anchor_match(ctx, a):
            intervals.append(iv)
            if prov is not None:
                for pos in range(iv.lo, iv.hi + 1):
                    prov.setdefault(pos, ("anchor", a))
    n_limit = wlen - m
    positions = {
        v for iv in union_intervals(intervals, n_limit) for v in range(iv.lo, iv.hi + 1)
    }
    if chains:
        diffs = {c.difference for c in chains}
        if len(diffs) != 1:
            raise AssertionError(
                "periodic samples emitted chains with different periods"
            )
        q = diffs.pop()
        for iv in union_chains(chains, n_limit, q):
            positions.update(range(iv.lo, iv.hi + 1))
        if prov is not None:
            for c, origin in zip(chains, origins):
                for t in range(c.count + 1):
                    lo = c.base.lo + t * q
                    for pos in range(lo, lo + len(c.base)):
                        if 0 <= pos <= n_limit:
                            prov.setdefault(pos, ("chain", q, origin))
    return sorted(positions)


# -- drivers -----------------------------------------------------------------


def _windowed(t, p, k, window_fn, parallel, want_prov):
    n, m = t.size, p.size
    amap = build_alphabet_map(p)
    p_r = amap.apply(p)
    plan = plan_windows(n, m)
    jobs = [(start, wlen) for start, wlen in plan.windows if start <= n - m]

    def work(job):
        start, wlen = job
        w_r = amap.apply(t[start : start + wlen])
        local_prov: dict | None = {} if want_prov else None
        local = window_fn(p_r, w_r, k, local_prov)
        owned = [start + v for v in local if v < m]
        prov_out = {}
        if want_prov:
            for v, tag in local_prov.items():
                if v < m:
                    if tag[0] == "anchor":
                        prov_out[start + v] = ("anchor", start + tag[1])
                    else:
                        _, q, c = tag
                        prov_out[start + v] = ("chain", q, (c - start) % q)
        return owned, prov_out

    results = []
    if parallel and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=min(4, len(jobs))) as pool:
            results = list(pool.map(work, jobs))
    else:
        results = [work(j) for j in jobs]
    positions = []
    provenance = {}
    for owned, pr in results:
        positions.extend(owned)
        provenance.update(pr)
    return positions, provenance


def solve_anchor_sweep(text, pattern, k: int) -> OccurrenceReport:
    """All occurrence positions via the per-anchor sweep, windowed for O(m) space."""
    t, p = as_symbols(text), as_symbols(pattern)
    _validate(p, k)
    if t.size < p.size:
        return OccurrenceReport([])
    positions, _ = _windowed(t, p, k, _window_anchor_sweep, False, False)
    return OccurrenceReport(positions)


def solve_window_k4(window, pattern, k: int) -> list[int]:
    """Occurrence starts inside one window (length <= 2m) via the sample algorithm."""
    w, p = as_symbols(window), as_symbols(pattern)
    _validate(p, k)
    amap = build_alphabet_map(p)
    return _window_sample_k4(amap.apply(p), amap.apply(w), k)


def _validate(p, k):
    if p.size == 0:
        raise ValueError("empty pattern")
    if k < 0:
        raise ValueError("k must be non-negative")


def _resolve(algorithm: str, n: int, m: int, k: int) -> str:
    if algorithm != "auto":
        return algorithm
    if n * k <= n + (n / m) * k**4:
        return "anchor_sweep"
    return "sample_k4"


def solve(text, pattern, k: int, config: SolverConfig | None = None) -> OccurrenceReport:
    """All positions where some rotation of the pattern occurs with <= k mismatches."""
    config = config or SolverConfig()
    t, p = as_symbols(text), as_symbols(pattern)
    _validate(p, k)
    n, m = t.size, p.size
    if n < m:
        return OccurrenceReport([], [], []) if config.want_witness else OccurrenceReport([])
    if k >= m:
        positions = list(range(n - m + 1))
        report = OccurrenceReport(positions)
        if config.want_witness:
            _attach_witnesses(report, t, p, k, {})
        return report
    algorithm = _resolve(config.algorithm, n, m, k)
    if algorithm == "naive":
        report = brute_force_cpm(t, p, k)
        if not config.want_witness:
            report = OccurrenceReport(report.positions)
        return report
    if algorithm == "sample_k4" and m < 2 * k + 3:
        algorithm = "anchor_sweep"
    window_fn = _window_anchor_sweep if algorithm == "anchor_sweep" else _window_sample_k4
    positions, prov = _windowed(
        t, p, k, window_fn, config.parallel_windows, config.want_witness
    )
    report = OccurrenceReport(positions)
    if config.want_witness:
        _attach_witnesses(report, t, p, k, prov)
    return report


# -- witness recovery --------------------------------------------------------


def _verify_rotation(t, p, pos, x, k):
    m = p.size
    rot = np.concatenate([p[x:], p[:x]])
    d = int(np.count_nonzero(t[pos : pos + m] != rot))
    return d if d <= k else None


def recover_witness(text, pattern, k: int, pos: int, provenance=None) -> tuple[int, int]:
    """A rotation witnessing the occurrence at pos, with its mismatch count.

    Tries the provenance hint first (anchor or chain residue), then scans all
    rotations; returns the smallest rotation that verifies.
    """
    t, p = as_symbols(text), as_symbols(pattern)
    m = p.size
    if provenance is not None:
        if provenance[0] == "anchor":
            x = (pos + m - provenance[1]) % m
            d = _verify_rotation(t, p, pos, x, k)
            if d is not None:
                return x, d
        elif provenance[0] == "chain":
            _, q, c = provenance
            # the rotation window may sit in either pattern copy, so its
            # residue class is shifted by m for the second copy
            residues = {(c + pos) % q, (c + pos - m) % q}
            for x in sorted(x for r in residues for x in range(r, m, q)):
                d = _verify_rotation(t, p, pos, x, k)
                if d is not None:
                    return x, d
    for x in range(m):
        d = _verify_rotation(t, p, pos, x, k)
        if d is not None:
            return x, d
    raise RuntimeError(f"position {pos} has no rotation within {k} mismatches")


def _attach_witnesses(report: OccurrenceReport, t, p, k, prov):
    rotations, mismatches = [], []
    for pos in report.positions:
        x, d = recover_witness(t, p, k, pos, prov.get(pos))
        rotations.append(x)
        mismatches.append(d)
    report.rotations = rotations
    report.mismatches = mismatches
