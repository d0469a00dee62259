"""Longest-common-extension machinery: suffix ranking, RMQ tables, kangaroo queries."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .sequences import as_symbols

_SMALL_N = 96


def _suffix_array_small(s: np.ndarray) -> np.ndarray:
    raw = s.astype(">i4").tobytes()
    order = sorted(range(s.size), key=lambda i: raw[4 * i :])
    return np.asarray(order, dtype=np.int32)


def _suffix_array_doubling(s: np.ndarray) -> np.ndarray:
    # prefix doubling with both ranks packed into one int64 key per round,
    # letting numpy's stable (radix) argsort do the work
    n = s.size
    rank = np.unique(s, return_inverse=True)[1].astype(np.int64)
    shift = int(n).bit_length() + 1
    step = 1
    while True:
        if int(rank.max()) == n - 1:
            sa = np.empty(n, dtype=np.int32)
            sa[rank] = np.arange(n, dtype=np.int32)
            return sa
        key = rank << shift
        if step < n:
            key[: n - step] |= rank[step:] + 1
        sa = np.argsort(key, kind="stable").astype(np.int32)
        ks = key[sa]
        bump = np.empty(n, dtype=np.int64)
        bump[0] = 0
        np.cumsum(ks[1:] != ks[:-1], out=bump[1:])
        rank = np.empty(n, dtype=np.int64)
        rank[sa] = bump
        if int(bump[-1]) == n - 1:
            return sa
        step <<= 1


def suffix_array(s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Suffix array and inverse (rank) of an integer string."""
    n = s.size
    if n == 0:
        raise ValueError("cannot index an empty string")
    sa = _suffix_array_small(s) if n <= _SMALL_N else _suffix_array_doubling(s)
    rank = np.empty(n, dtype=np.int32)
    rank[sa] = np.arange(n, dtype=np.int32)
    return sa, rank


def lcp_array(s: np.ndarray, sa: np.ndarray, rank: np.ndarray) -> np.ndarray:
    lcp = np.zeros(max(s.size - 1, 0), dtype=np.int32)
    if s.size > 1:
        _kernels.kasai(s, sa, rank, lcp)
    return lcp


def _log_table(n: int) -> np.ndarray:
    lut = np.zeros(n + 1, dtype=np.int32)
    for i in range(2, n + 1):
        lut[i] = lut[i >> 1] + 1
    return lut


def _sparse_table(vals: np.ndarray, levels: int) -> np.ndarray:
    n = vals.size
    tab = np.full((max(levels, 1), max(n, 1)), np.iinfo(np.int32).max, dtype=np.int32)
    if n:
        tab[0, :n] = vals
        for t in range(1, levels):
            half = 1 << (t - 1)
            if n - (1 << t) + 1 <= 0:
                break
            np.minimum(
                tab[t - 1, : n - (1 << t) + 1],
                tab[t - 1, half : n - (1 << t) + 1 + half],
                out=tab[t, : n - (1 << t) + 1],
            )
    return tab


class _Direction:
    """RMQ structures over one orientation of the base string."""

    def __init__(self, s: np.ndarray, loglut: np.ndarray):
        self.n = s.size
        self.sa, self.rank = suffix_array(s)
        self.lcp = lcp_array(s, self.sa, self.rank)
        levels = int(loglut[self.lcp.size]) + 1 if self.lcp.size else 1
        self.table = _sparse_table(self.lcp, levels)
        self.loglut = loglut

    def lcp_pair(self, i: int, j: int) -> int:
        if i == j:
            return self.n - i
        ri, rj = int(self.rank[i]), int(self.rank[j])
        if ri > rj:
            ri, rj = rj, ri
        t = int(self.loglut[rj - ri])
        return min(int(self.table[t, ri]), int(self.table[t, rj - (1 << t)]))

    def lcp_batch(self, i_arr: np.ndarray, j_arr: np.ndarray) -> np.ndarray:
        ri = self.rank[i_arr]
        rj = self.rank[j_arr]
        lo = np.minimum(ri, rj)
        hi = np.maximum(ri, rj)
        span = hi - lo
        same = span == 0
        span[same] = 1
        t = self.loglut[span]
        out = np.minimum(
            self.table[t, lo], self.table[t, hi - (np.int32(1) << t)]
        ).astype(np.int64)
        if same.any():
            out[same] = self.n - np.asarray(i_arr)[same]
        return out


@dataclass(frozen=True)
class ArithmeticOccurrences:
    """Occurrence positions first, first+difference, ... (count terms)."""

    first: int
    difference: int
    count: int

    def positions(self) -> list[int]:
        return [self.first + t * self.difference for t in range(self.count)]

    @property
    def last(self) -> int:
        return self.first + (self.count - 1) * self.difference


class TextIndex:
    """Exact and mismatch-bounded longest-common-extension queries over a base string.

    Forward queries compare rightward from (i, j); backward queries compare
    leftward starting at the given positions themselves.
    """

    def __init__(self, base):
        s = as_symbols(base)
        if s.size == 0:
            raise ValueError("cannot index an empty string")
        self.base = s
        self.n = s.size
        self.loglut = _log_table(self.n)
        self.fwd = _Direction(s, self.loglut)
        self.bwd = _Direction(s[::-1].copy(), self.loglut)

    # -- exact queries ----------------------------------------------------
    def lcp(self, i: int, j: int, cap: int | None = None) -> int:
        self._check(i), self._check(j)
        e = self.fwd.lcp_pair(i, j)
        e = min(e, self.n - max(i, j))
        return e if cap is None else min(e, cap)

    def lcs(self, i: int, j: int, cap: int | None = None) -> int:
        self._check(i), self._check(j)
        r = self.n - 1
        e = self.bwd.lcp_pair(r - i, r - j)
        e = min(e, min(i, j) + 1)
        return e if cap is None else min(e, cap)

    def lcp_batch(self, i_arr, j_arr) -> np.ndarray:
        return self.fwd.lcp_batch(np.asarray(i_arr), np.asarray(j_arr))

    def _check(self, i: int):
        if not 0 <= i < self.n:
            raise IndexError(f"position {i} out of range")

    # -- kangaroo queries --------------------------------------------------
    def lce_k(
        self, i: int, j: int, k: int, direction: str = "forward", cap: int | None = None
    ) -> tuple[int, list[int]]:
        """Maximal extension with <= k mismatches plus the mismatch offsets.

        Forward compares base[i+t] vs base[j+t], backward base[i-t] vs
        base[j-t]; offsets count from t=0 in either direction.
        """
        fwd = direction == "forward"
        if fwd:
            limit = self.n - max(i, j)
        else:
            limit = min(i, j) + 1
        if cap is not None:
            limit = min(limit, cap)
        t = 0
        mism: list[int] = []
        while t < limit:
            e = self.lcp(i + t, j + t) if fwd else self.lcs(i - t, j - t)
            t += min(e, limit - t)
            if t >= limit:
                break
            if len(mism) >= k:
                break
            mism.append(t)
            t += 1
        return t, mism

    def lce_k_vs_power(
        self,
        q_start: int,
        q_len: int,
        from_pos: int,
        k: int,
        direction: str = "forward",
        cap: int | None = None,
    ) -> tuple[int, list[int]]:
        """Extension of the base against the infinite power of Q = base[q_start ..].

        Forward aligns base[from_pos] with Q[0]; backward aligns it with
        Q[q_len-1] and walks left.  Same return convention as lce_k.
        """
        if q_len < 1:
            raise ValueError("period block must be non-empty")
        fwd = direction == "forward"
        limit = (self.n - from_pos) if fwd else (from_pos + 1)
        if cap is not None:
            limit = min(limit, cap)
        t = 0
        mism: list[int] = []
        while t < limit:
            phase = t % q_len
            e = self._power_jump(q_start, q_len, from_pos, t, phase, limit - t, fwd)
            t += e
            if t >= limit:
                break
            if len(mism) >= k:
                break
            mism.append(t)
            t += 1
        return t, mism

    def _power_jump(self, q_start, q_len, from_pos, t, phase, room, fwd) -> int:
        """Exact extension against Q^inf from offset t (at the given phase)."""
        if fwd:
            b = from_pos + t
            a = q_start + phase
            e1 = min(self.lcp(a, b), q_len - phase, room)
            if e1 < q_len - phase or e1 == room:
                return e1
            t0 = q_len - phase
            e2 = min(self.lcp(q_start, b + t0), q_len, room - t0)
            if e2 < q_len or t0 + e2 == room:
                return t0 + e2
            e3 = min(self.lcp(b + t0, b + t0 + q_len), room - t0 - q_len)
            return t0 + q_len + e3
        b = from_pos - t
        a = q_start + q_len - 1 - phase
        e1 = min(self.lcs(a, b), q_len - phase, room)
        if e1 < q_len - phase or e1 == room:
            return e1
        t0 = q_len - phase
        e2 = min(self.lcs(q_start + q_len - 1, b - t0), q_len, room - t0)
        if e2 < q_len or t0 + e2 == room:
            return t0 + e2
        e3 = min(self.lcs(b - t0, b - t0 - q_len), room - t0 - q_len)
        return t0 + q_len + e3


def smallest_period(seq) -> int:
    """Least q >= 1 with S[i] == S[i+q] everywhere it applies."""
    s = as_symbols(seq)
    if s.size == 0:
        raise ValueError("period of an empty string is undefined")
    pi = np.zeros(s.size, dtype=np.int32)
    _kernels.failure(s, pi)
    return int(s.size - pi[-1])


def fragment_occurrences(
    index: TextIndex, f_start: int, f_len: int, g_start: int, g_len: int
) -> list[ArithmeticOccurrences]:
    """Exact occurrences of F = base[f_start ..] inside G = base[g_start ..].

    Positions are G-relative, grouped into maximal arithmetic sequences with
    difference per(F).
    """
    if f_len <= 0:
        raise ValueError("fragment must be non-empty")
    if g_len < f_len:
        return []
    starts = g_start + np.arange(g_len - f_len + 1, dtype=np.int64)
    ext = index.lcp_batch(starts, np.full(starts.size, f_start, dtype=np.int64))
    occ = np.flatnonzero(ext >= f_len)
    if occ.size == 0:
        return []
    q = smallest_period(index.base[f_start : f_start + f_len])
    groups: list[ArithmeticOccurrences] = []
    run_start = int(occ[0])
    run_len = 1
    prev = run_start
    for v in occ[1:]:
        v = int(v)
        if v - prev == q:
            run_len += 1
        else:
            groups.append(ArithmeticOccurrences(run_start, q, run_len))
            run_start, run_len = v, 1
        prev = v
    groups.append(ArithmeticOccurrences(run_start, q, run_len))
    return groups
