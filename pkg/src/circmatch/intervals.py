"""Intervals, interval chains, their grid-rectangle decomposition and unions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, order=True)
class Interval:
    """Inclusive integer interval; empty iff hi < lo (canonical empty is (0, -1))."""

    lo: int
    hi: int

    @staticmethod
    def empty() -> "Interval":
        return Interval(0, -1)

    @property
    def is_empty(self) -> bool:
        return self.hi < self.lo

    def __len__(self) -> int:
        return max(0, self.hi - self.lo + 1)

    def shift(self, r: int) -> "Interval":
        if self.is_empty:
            return Interval.empty()
        return Interval(self.lo + r, self.hi + r)

    def intersect(self, other: "Interval") -> "Interval":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return Interval(lo, hi) if lo <= hi else Interval.empty()

    def __contains__(self, v: int) -> bool:
        return self.lo <= v <= self.hi


def merge_intervals(intervals) -> list[Interval]:
    """Sorted union of intervals, overlapping or touching ones merged."""
    items = sorted(iv for iv in intervals if not iv.is_empty)
    out: list[Interval] = []
    for iv in items:
        if out and iv.lo <= out[-1].hi + 1:
            if iv.hi > out[-1].hi:
                out[-1] = Interval(out[-1].lo, iv.hi)
        else:
            out.append(iv)
    return out


def positions_to_intervals(positions) -> list[Interval]:
    arr = np.asarray(sorted(set(int(p) for p in positions)), dtype=np.int64)
    if arr.size == 0:
        return []
    cuts = np.flatnonzero(np.diff(arr) > 1)
    starts = np.concatenate([[0], cuts + 1])
    ends = np.concatenate([cuts, [arr.size - 1]])
    return [Interval(int(arr[s]), int(arr[e])) for s, e in zip(starts, ends)]


@dataclass(frozen=True)
class IntervalChain:
    """Base interval replicated count+1 times with stride; four integers total."""

    base: Interval
    difference: int
    count: int

    def __post_init__(self):
        if self.difference < 1:
            raise ValueError("chain difference must be >= 1")
        if self.count < 0:
            raise ValueError("chain count must be >= 0")

    @property
    def is_empty(self) -> bool:
        return self.base.is_empty

    def span_hi(self) -> int:
        return self.base.hi + self.count * self.difference


def chain_elements(chain: IntervalChain) -> list[int]:
    """Materialized element set of the chain, sorted (test/debug helper)."""
    if chain.is_empty:
        return []
    out = set()
    for t in range(chain.count + 1):
        r = t * chain.difference
        out.update(range(chain.base.lo + r, chain.base.hi + r + 1))
    return sorted(out)


def chain_to_rectangles(chain: IntervalChain, n: int) -> list[tuple[int, int, int, int]]:
    """Decompose a chain into <= 3 axis-aligned rectangles on the width-q grid.

    Grid cells are 0-based: value v lives at (row v // q, col v % q).
    Rectangles are (row_lo, row_hi, col_lo, col_hi), all inclusive.
    """
    if chain.is_empty:
        return []
    q = chain.difference
    lo, hi, a = chain.base.lo, chain.base.hi, chain.count
    if lo < 0 or chain.span_hi() > n:
        raise ValueError("chain not contained in [0..n]")
    width = hi - lo + 1
    if width >= q:
        # consecutive copies touch or overlap: one contiguous range of integers
        end = hi + a * q
        r0, c0 = lo // q, lo % q
        r1, c1 = end // q, end % q
        if r0 == r1:
            return [(r0, r1, c0, c1)]
        rects = []
        if c0 == 0:
            rects.append((r0, r1 - 1, 0, q - 1))
        else:
            rects.append((r0, r0, c0, q - 1))
            if r1 - 1 >= r0 + 1:
                rects.append((r0 + 1, r1 - 1, 0, q - 1))
        if c1 == q - 1:
            last = rects[-1]
            if last[2] == 0 and last[3] == q - 1 and last[1] == r1 - 1:
                rects[-1] = (last[0], r1, 0, q - 1)
            else:
                rects.append((r1, r1, 0, q - 1))
        else:
            rects.append((r1, r1, 0, c1))
        return rects
    r0, c0 = lo // q, lo % q
    if c0 + width <= q:
        return [(r0, r0 + a, c0, c0 + width - 1)]
    # base straddles a row boundary: one rectangle per column block
    return [
        (r0, r0 + a, c0, q - 1),
        (r0 + 1, r0 + 1 + a, 0, (c0 + width - 1) % q),
    ]


class GridAccumulator:
    """2D difference array over the width-q grid covering [0..n].

    Rectangles are added as corner increments; coverage() turns the
    difference array into per-cell coverage counts via prefix sums.
    """

    def __init__(self, n: int, q: int):
        if q < 1:
            raise ValueError("grid width must be >= 1")
        self.n = n
        self.q = q
        self.rows = n // q + 1
        self.cells = np.zeros((self.rows + 1, q + 1), dtype=np.int32)

    def add_rectangle(self, row_lo: int, row_hi: int, col_lo: int, col_hi: int):
        t = self.cells
        t[row_lo, col_lo] += 1
        t[row_hi + 1, col_lo] -= 1
        t[row_lo, col_hi + 1] -= 1
        t[row_hi + 1, col_hi + 1] += 1

    def add_chain(self, chain: IntervalChain):
        for rect in chain_to_rectangles(chain, self.n):
            self.add_rectangle(*rect)

    def coverage(self) -> np.ndarray:
        cov = self.cells.cumsum(axis=0).cumsum(axis=1)
        return cov[: self.rows, : self.q]

    def covered_positions(self) -> np.ndarray:
        flat = np.flatnonzero(self.coverage().ravel() >= 1)
        return flat[flat <= self.n]

    def reset(self):
        self.cells.fill(0)


def union_chains(chains, n: int, q: int) -> list[Interval]:
    """Exact union of difference-q chains within [0..n], as sorted intervals."""
    chains = [c for c in chains if not c.is_empty]
    for c in chains:
        if c.difference != q:
            raise ValueError("union_chains requires a common difference")
    if not chains:
        return []
    grid = GridAccumulator(n, q)
    for c in chains:
        grid.add_chain(c)
    return positions_to_intervals(grid.covered_positions())


def union_intervals(intervals, n: int) -> list[Interval]:
    """Union of plain intervals clipped to [0..n] via start/end counters."""
    diff = np.zeros(n + 2, dtype=np.int64)
    for iv in intervals:
        lo, hi = max(iv.lo, 0), min(iv.hi, n)
        if lo <= hi:
            diff[lo] += 1
            diff[hi + 1] -= 1
    cov = np.cumsum(diff[: n + 1])
    return positions_to_intervals(np.flatnonzero(cov >= 1))


def mod_filter(z: Interval, x: Interval, q: int) -> list[IntervalChain]:
    """Positions of Z whose residue mod q matches some position of X, <= 3 chains."""
    if q < 1:
        raise ValueError("stride must be >= 1")
    if z.is_empty or x.is_empty:
        return []
    span = len(x)
    if span >= q:
        return [IntervalChain(z, q, 0)]
    # hits are {v : (v - r1) mod q < span}; maximal hit runs start at r1 + t*q
    r1 = x.lo % q
    t0 = -((r1 + span - 1 - z.lo) // q)  # first run whose end reaches z.lo
    t1 = (z.hi - r1) // q  # last run whose start is within z
    if t0 > t1:
        return []

    def run(t: int) -> Interval:
        s = r1 + t * q
        return Interval(s, s + span - 1)

    if t0 == t1:
        return [IntervalChain(run(t0).intersect(z), q, 0)]
    first, last = run(t0), run(t1)
    first_full = first.lo >= z.lo
    last_full = last.hi <= z.hi
    out: list[IntervalChain] = []
    if not first_full:
        out.append(IntervalChain(first.intersect(z), q, 0))
    fa = t0 + (0 if first_full else 1)
    fb = t1 - (0 if last_full else 1)
    if fa <= fb:
        out.append(IntervalChain(run(fa), q, fb - fa))
    if not last_full:
        out.append(IntervalChain(last.intersect(z), q, 0))
    return out


def shift_chain(chain: IntervalChain, r: int) -> list[IntervalChain]:
    """Shift all elements by r and clip at zero; exact, at most two chains.

    Clipping can split the lowest surviving copy, hence a list (usually of
    length one; empty when everything lands below zero).
    """
    if chain.is_empty:
        return []
    q, a = chain.difference, chain.count
    lo, hi = chain.base.lo + r, chain.base.hi + r
    if lo >= 0:
        return [IntervalChain(Interval(lo, hi), q, a)]
    t_full = -(lo // q)  # smallest t with lo + t*q >= 0
    out: list[IntervalChain] = []
    t_part = min(t_full - 1, a)
    # copies below t_full poke above zero only with their tails, all nested
    if t_part >= 0 and hi + t_part * q >= 0:
        out.append(IntervalChain(Interval(0, hi + t_part * q), q, 0))
    if t_full <= a:
        out.append(
            IntervalChain(Interval(lo + t_full * q, hi + t_full * q), q, a - t_full)
        )
    return out
