"""Anchored occurrence queries and the mark accumulator for candidate anchors."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .index import TextIndex
from .intervals import Interval, merge_intervals
from .lightcount import SparseBinaryString, light_fragments
from .sequences import as_symbols

@dataclass
class AnchorContext:
    """Query context for one text window: an index over pattern^2 + window.

    Base layout is  P P s1 W s2  with two distinct separator ranks, so the
    pattern lives at [0, m) and [m, 2m) and the window at ``woff``.
    """

    index: TextIndex
    m: int
    wlen: int
    woff: int
    k: int

    @property
    def window(self) -> np.ndarray:
        return self.index.base[self.woff : self.woff + self.wlen]

    @property
    def psquare(self) -> np.ndarray:
        return self.index.base[: 2 * self.m]


def build_context(pattern, window, k: int) -> AnchorContext:
    p = as_symbols(pattern)
    w = as_symbols(window)
    if p.size == 0:
        raise ValueError("empty pattern")
    top = int(max(p.max(), w.max(initial=0))) + 1
    base = np.concatenate(
        [p, p, [top], w, [top + 1]]
    ).astype(np.int32)
    return AnchorContext(TextIndex(base), p.size, w.size, 2 * p.size + 1, k)


def anchor_match(ctx: AnchorContext, a: int) -> list[Interval]:
    """Starts of occurrences anchored at window position a, as sorted intervals.

    An occurrence at p anchored at a aligns the window suffix at a with the
    pattern start and the window prefix ending at a-1 with the pattern end;
    kangaroo jumps bound both mismatch lists by k and the light-window scan
    does the rest.
    """
    m, wlen, k = ctx.m, ctx.wlen, ctx.k
    if not 0 <= a < wlen:
        raise ValueError("anchor out of range")
    n_limit = wlen - m
    if n_limit < 0:
        return []
    cap_f = min(m, wlen - a)
    if cap_f > 0:
        flen, fmis = ctx.index.lce_k(ctx.woff + a, 0, k, "forward", cap_f)
    else:
        flen, fmis = 0, []
    cap_b = min(m, a)
    if cap_b > 0:
        blen, bmis = ctx.index.lce_k(ctx.woff + a - 1, 2 * m - 1, k, "backward", cap_b)
    else:
        blen, bmis = 0, []
    ones = sorted([blen - 1 - o for o in bmis] + [blen + o for o in fmis])
    light = light_fragments(SparseBinaryString(blen + flen, ones), m, k)
    lo_clip = max(0, a - m + 1)
    hi_clip = min(a, n_limit)
    out = []
    for iv in light:
        lo = max(a - blen + iv.lo, lo_clip)
        hi = min(a - blen + iv.hi, hi_clip)
        if lo <= hi:
            out.append(Interval(lo, hi))
    return out


def candidate_anchors(i: int, j: int, m: int, wlen: int) -> list[int]:
    """The at most two anchors compatible with aligning window[i] to pattern[j]."""
    out = []
    if i - j >= 0:
        out.append(i - j)
    if j > 0 and i + m - j < wlen:  # j == 0 would duplicate the anchor above
        out.append(i + m - j)
    return out


def pair_match(ctx: AnchorContext, i: int, j: int) -> list[Interval]:
    """Occurrence starts whose alignment matches window[i] with pattern[j]."""
    if not 0 <= i < ctx.wlen:
        raise ValueError("text index out of range")
    if not 0 <= j < ctx.m:
        raise ValueError("pattern index out of range")
    clip = Interval(i - ctx.m + 1, i)
    out = []
    for a in candidate_anchors(i, j, ctx.m, ctx.wlen):
        for iv in anchor_match(ctx, a):
            cut = iv.intersect(clip)
            if not cut.is_empty:
                out.append(cut)
    return merge_intervals(out)


class MarkTable:
    """Per-window anchor mark counts; anchors at or above threshold get verified."""

    def __init__(self, wlen: int, m: int, k: int):
        self.counts = np.zeros(wlen, dtype=np.int32)
        self.m = m
        self.threshold = k + 2

    def reset(self):
        self.counts.fill(0)


def deposit_marks(table: MarkTable, i: int, j: int, sample_id: int | None = None):
    """Mark the anchors compatible with the pair (i, j); sample_id is advisory only."""
    for a in candidate_anchors(i, j, table.m, table.counts.size):
        table.counts[a] += 1


def heavy_anchors(table: MarkTable) -> list[int]:
    return np.flatnonzero(table.counts >= table.threshold).tolist()
