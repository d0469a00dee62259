"""Sample machinery: pattern splitting, sample runs, misperiods and periodic matching."""

from __future__ import annotations

from dataclasses import dataclass

from .anchors import AnchorContext, MarkTable, deposit_marks, pair_match
from .index import TextIndex, fragment_occurrences, smallest_period
from .intervals import Interval, IntervalChain, merge_intervals, shift_chain
from .lightcount import SparseBinaryString, aligned_light_sum
from .sequences import as_symbols


@dataclass(frozen=True)
class Sample:
    """One of the 2k+3 contiguous pattern fragments."""

    start: int
    length: int
    periodic: bool
    period: int

    @property
    def end(self) -> int:
        return self.start + self.length - 1


def split_samples(pattern, k: int) -> list[Sample]:
    """Split the pattern into 2k+3 fragments whose lengths differ by at most one."""
    p = as_symbols(pattern)
    m = p.size
    pieces = 2 * k + 3
    if m < pieces:
        raise ValueError("pattern shorter than 2k+3; caller must fall back")
    short = m // pieces
    rem = m % pieces
    out = []
    pos = 0
    for t in range(pieces):
        length = short + 1 if t < rem else short
        q = smallest_period(p[pos : pos + length])
        out.append(Sample(pos, length, 2 * q <= length, q))
        pos += length
    return out


@dataclass(frozen=True)
class SampleRun:
    """Maximal arithmetic progression of exact sample occurrences in the window."""

    start: int
    length: int
    stride: int
    occurrences: int

    @property
    def last_occurrence(self) -> int:
        return self.start + (self.occurrences - 1) * self.stride


def find_runs(ctx: AnchorContext, sample: Sample) -> list[SampleRun]:
    """All runs of a periodic sample in the window, in window coordinates."""
    if not sample.periodic:
        raise ValueError("find_runs needs a periodic sample")
    groups = fragment_occurrences(
        ctx.index, sample.start, sample.length, ctx.woff, ctx.wlen
    )
    q = sample.period
    merged = []
    for g in groups:
        if merged and g.first - merged[-1][1] == q:
            merged[-1][1] = g.last
            merged[-1][2] += g.count
        else:
            merged.append([g.first, g.last, g.count])
    return [
        SampleRun(first, last - first + sample.length, q, cnt)
        for first, last, cnt in merged
    ]


@dataclass(frozen=True)
class MisperiodSet:
    """Nearest misperiods on each side of an exact block occurrence, sorted."""

    left: tuple[int, ...]
    right: tuple[int, ...]
    block: tuple[int, int]

    def all(self) -> list[int]:
        return list(self.left) + list(self.right)


def misperiods(
    index: TextIndex,
    i: int,
    j: int,
    limit: int,
    side: str = "both",
    lo: int = 0,
    hi: int | None = None,
) -> MisperiodSet:
    """Up to `limit` misperiods per side around the block base[i..j], within [lo, hi].

    A position a is a misperiod when base[a] differs from the block letter at
    the same phase of the period grid anchored at i.
    """
    if j < i:
        raise ValueError("empty period block")
    if hi is None:
        hi = index.n - 1
    q = j - i + 1
    left: list[int] = []
    right: list[int] = []
    if side in ("both", "left") and i - 1 >= lo:
        _, mism = index.lce_k_vs_power(i, q, i - 1, limit, "backward", cap=i - lo)
        left = sorted(i - 1 - o for o in mism)
    if side in ("both", "right") and j + 1 <= hi:
        _, mism = index.lce_k_vs_power(i, q, j + 1, limit, "forward", cap=hi - j)
        right = sorted(j + 1 + o for o in mism)
    return MisperiodSet(tuple(left), tuple(right), (i, j))


@dataclass(frozen=True)
class PPMInstance:
    """Two period-block-aligned fragments given by their misperiod offsets.

    u covers a text stretch, v a stretch of the doubled pattern; i_block and
    v_block are the offsets of the shared exact block occurrence.
    """

    u_len: int
    u_ones: tuple[int, ...]
    u_block: int
    v_len: int
    v_ones: tuple[int, ...]
    v_block: int
    q: int
    k: int
    m: int

    def __post_init__(self):
        if not (self.m <= self.u_len and self.m <= self.v_len):
            raise ValueError("fragments must be able to contain one occurrence")


def periodic_periodic_match(inst: PPMInstance) -> list[IntervalChain]:
    """Positions p in u that pair with some aligned rotation window of v.

    Covers every occurrence whose misperiods are disjoint from the rotation's;
    extra reported positions only ever merge misperiods and stay valid.
    Output positions are u-relative, all chains with difference q.
    """
    z = (inst.v_block - inst.u_block) % inst.q
    u_sparse = SparseBinaryString(
        inst.u_len + z, tuple(o + z for o in inst.u_ones)
    )
    v_sparse = SparseBinaryString(inst.v_len, inst.v_ones)
    chains = aligned_light_sum(u_sparse, v_sparse, inst.m, inst.k, inst.q)
    out: list[IntervalChain] = []
    for c in chains:
        out.extend(shift_chain(c, -z))
    return out


def _pattern_misperiods(ctx: AnchorContext, block: int, q: int, limit: int):
    """Misperiod set around a block of the doubled pattern, clipped to it."""
    m = ctx.m
    return misperiods(ctx.index, block, block + q - 1, limit, lo=0, hi=2 * m - 1)


def run_sample_matching(
    ctx: AnchorContext,
    sample: Sample,
    run: SampleRun,
    marks: MarkTable | None = None,
    chain_origins: list[int] | None = None,
) -> tuple[list[Interval], list[IntervalChain]]:
    """Occurrences whose sample matches inside the given run (plus valid extras).

    Follows the periodic pipeline: misperiod sets around the run's period
    block on the text side and around both pattern copies of the sample block
    on the pattern side, a periodic-periodic match per side, and pair
    matching (or mark deposits) for every misperiod pair.  Returns
    (intervals, chains) in window coordinates; with a mark table the
    intervals are deposited as marks instead and the list is empty.
    """
    m, k, wlen = ctx.m, ctx.k, ctx.wlen
    q = sample.period
    s = run.start
    tj = misperiods(
        ctx.index,
        ctx.woff + s,
        ctx.woff + s + q - 1,
        k + 1,
        lo=ctx.woff,
        hi=ctx.woff + wlen - 1,
    )
    j_left = [p - ctx.woff for p in tj.left]
    j_right = [p - ctx.woff for p in tj.right]
    u_lo = j_left[0] if len(j_left) == k + 1 else 0
    u_hi = j_right[-1] if len(j_right) == k + 1 else wlen - 1
    u_len = u_hi - u_lo + 1
    text_ones = tuple(p - u_lo for p in j_left + j_right)
    pair_is = j_left + j_right
    chains: list[IntervalChain] = []
    intervals: list[Interval] = []
    for block in (sample.start, m + sample.start):
        pj = _pattern_misperiods(ctx, block, q, k + 1)
        v_lo = pj.left[0] if len(pj.left) == k + 1 else 0
        v_hi = pj.right[-1] if len(pj.right) == k + 1 else 2 * m - 1
        v_len = v_hi - v_lo + 1
        if u_len >= m and v_len >= m:
            inst = PPMInstance(
                u_len,
                text_ones,
                s - u_lo,
                v_len,
                tuple(p - v_lo for p in pj.all()),
                block - v_lo,
                q,
                k,
                m,
            )
            for c in periodic_periodic_match(inst):
                shifted = shift_chain(c, u_lo)
                chains.extend(shifted)
                if chain_origins is not None:
                    # witness rotations fall in the residue class of
                    # (block - s) + p, up to a copy shift of m, mod q
                    chain_origins.extend([(block - s) % q] * len(shifted))
        pattern_js = sorted({p % m for p in pj.all()})
        for i_t in pair_is:
            for j_p in pattern_js:
                if marks is not None:
                    deposit_marks(marks, i_t, j_p)
                else:
                    intervals.extend(pair_match(ctx, i_t, j_p))
    return merge_intervals(intervals), chains


def sample_match_nonperiodic(
    ctx: AnchorContext, sample: Sample, marks: MarkTable | None = None
) -> list[Interval]:
    """Occurrences aligning the sample with one of its exact matches in the window."""
    if sample.periodic:
        raise ValueError("sample_match_nonperiodic needs a non-periodic sample")
    groups = fragment_occurrences(
        ctx.index, sample.start, sample.length, ctx.woff, ctx.wlen
    )
    intervals: list[Interval] = []
    for g in groups:
        for t in g.positions():
            if marks is not None:
                deposit_marks(marks, t, sample.start)
            else:
                intervals.extend(pair_match(ctx, t, sample.start))
    return merge_intervals(intervals)
