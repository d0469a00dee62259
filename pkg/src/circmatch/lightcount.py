"""Sparse binary window counting: light windows and aligned light sums."""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

from .intervals import Interval, IntervalChain, mod_filter


@dataclass(frozen=True)
class SparseBinaryString:
    """A 0/1 string given by its total length and the sorted positions of its ones."""

    length: int
    ones: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ones", tuple(int(o) for o in self.ones))
        prev = -1
        for o in self.ones:
            if o <= prev:
                raise ValueError("one-positions must be strictly increasing")
            prev = o
        if self.ones and (self.ones[0] < 0 or self.ones[-1] >= self.length):
            raise ValueError("one-position out of range")


def window_count_pieces(s: SparseBinaryString, m: int) -> list[tuple[int, int, int]]:
    """Partition window starts [0, |s|-m] into maximal runs of constant one-count.

    Returns (lo, hi, count) triples; the covered one-set is constant on each
    piece, so the count is too.
    """
    hi = s.length - m
    if m < 1 or hi < 0:
        return []
    ones = s.ones
    count0 = bisect_right(ones, m - 1)  # ones inside the first window [0, m-1]
    deltas: dict[int, int] = {}
    for x in ones:
        enter = x - m + 1  # window start from which x is covered
        leave = x + 1  # window start from which x is no longer covered
        if 0 < enter <= hi:
            deltas[enter] = deltas.get(enter, 0) + 1
        if 0 < leave <= hi:
            deltas[leave] = deltas.get(leave, 0) - 1
    pieces = []
    cur, cnt = 0, count0
    for pos in sorted(deltas):
        if pos > cur:
            pieces.append((cur, pos - 1, cnt))
        cnt += deltas[pos]
        cur = pos
    pieces.append((cur, hi, cnt))
    return pieces


def light_fragments(v: SparseBinaryString, m: int, k: int) -> list[Interval]:
    """All window starts i with at most k ones in v[i .. i+m-1], as maximal intervals."""
    out: list[Interval] = []
    for lo, hi, cnt in window_count_pieces(v, m):
        if cnt <= k:
            if out and lo == out[-1].hi + 1:
                out[-1] = Interval(out[-1].lo, hi)
            else:
                out.append(Interval(lo, hi))
    return out


def _coalesce_chains(chains: list[IntervalChain]) -> list[IntervalChain]:
    """Drop duplicates and splice chains that continue each other."""
    chains = [c for c in chains if not c.is_empty]
    if not chains:
        return []
    chains.sort(key=lambda c: (c.difference, c.base.lo, c.base.hi, c.count))
    out = [chains[0]]
    for c in chains[1:]:
        prev = out[-1]
        if c == prev:
            continue
        same_shape = (
            c.difference == prev.difference
            and len(c.base) == len(prev.base)
        )
        if same_shape and c.base.lo == prev.base.lo + (prev.count + 1) * prev.difference:
            out[-1] = IntervalChain(prev.base, prev.difference, prev.count + c.count + 1)
        elif (
            same_shape
            and c.base.lo == prev.base.lo
            and c.count <= prev.count
        ):
            continue  # fully contained
        else:
            out.append(c)
    return out


def aligned_light_sum(
    u: SparseBinaryString, v: SparseBinaryString, m: int, k: int, q: int
) -> list[IntervalChain]:
    """Window starts i of u for which some j = i (mod q) has a combined one-count <= k.

    The output indexes u's windows and is returned as difference-q chains.
    """
    if q < 1:
        raise ValueError("stride must be >= 1")
    if m < 1 or u.length < m or v.length < m:
        return []
    u_pieces = window_count_pieces(u, m)
    v_pieces = window_count_pieces(v, m)
    # when every pairing is light and v reaches every residue, the whole range wins
    if (
        v.length - m + 1 >= q
        and max(p[2] for p in u_pieces) + max(p[2] for p in v_pieces) <= k
    ):
        return [IntervalChain(Interval(0, u.length - m), q, 0)]
    chains: list[IntervalChain] = []
    for zlo, zhi, cu in u_pieces:
        if cu > k:
            continue
        for xlo, xhi, cv in v_pieces:
            if cu + cv <= k:
                chains.extend(mod_filter(Interval(zlo, zhi), Interval(xlo, xhi), q))
    return _coalesce_chains(chains)
