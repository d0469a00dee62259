"""Core sequence types, rotations, bounded Hamming distance and the brute-force solver."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class Sequence:
    """Immutable string over a small integer alphabet.

    Symbols are non-negative integer ranks below ``alphabet_size``.  All
    solver inputs (pattern, text, windows) are Sequences or things that
    convert to one.
    """

    __slots__ = ("symbols", "alphabet_size")

    def __init__(self, symbols, alphabet_size: int | None = None):
        arr = np.ascontiguousarray(symbols, dtype=np.int32)
        if arr.ndim != 1:
            raise ValueError("symbols must be one-dimensional")
        if arr.size and arr.min() < 0:
            raise ValueError("symbol ranks must be non-negative")
        if alphabet_size is None:
            alphabet_size = int(arr.max()) + 1 if arr.size else 1
        elif arr.size and int(arr.max()) >= alphabet_size:
            raise ValueError("symbol rank out of range for alphabet_size")
        arr.setflags(write=False)
        object.__setattr__(self, "symbols", arr)
        object.__setattr__(self, "alphabet_size", int(alphabet_size))

    def __setattr__(self, name, value):
        raise AttributeError("Sequence is immutable")

    @classmethod
    def from_text(cls, text: str) -> "Sequence":
        return cls(np.frombuffer(text.encode("utf-32-le"), dtype=np.uint32).astype(np.int32))

    @classmethod
    def from_bytes(cls, data: bytes) -> "Sequence":
        return cls(np.frombuffer(data, dtype=np.uint8).astype(np.int32), alphabet_size=256)

    def __len__(self) -> int:
        return int(self.symbols.size)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Sequence(self.symbols[i], self.alphabet_size)
        return int(self.symbols[i])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Sequence):
            return NotImplemented
        return self.symbols.shape == other.symbols.shape and bool(
            np.array_equal(self.symbols, other.symbols)
        )

    def __hash__(self):
        return hash(self.symbols.tobytes())

    def __repr__(self):
        return f"Sequence({self.symbols.tolist()})"


def as_symbols(seq) -> np.ndarray:
    """Normalize a Sequence / str / bytes / array-like to an int32 array."""
    if isinstance(seq, Sequence):
        return seq.symbols
    if isinstance(seq, str):
        return Sequence.from_text(seq).symbols
    if isinstance(seq, (bytes, bytearray)):
        return Sequence.from_bytes(bytes(seq)).symbols
    return np.ascontiguousarray(seq, dtype=np.int32)


@dataclass(frozen=True)
class Occurrence:
    """One reported position, optionally with a witness rotation and its distance."""

    position: int
    rotation: int | None = None
    mismatches: int | None = None


@dataclass
class OccurrenceReport:
    """Sorted occurrence positions plus optional per-position witnesses."""

    positions: list[int] = field(default_factory=list)
    rotations: list[int] | None = None
    mismatches: list[int] | None = None

    def occurrences(self) -> list[Occurrence]:
        if self.rotations is None:
            return [Occurrence(p) for p in self.positions]
        return [
            Occurrence(p, r, d)
            for p, r, d in zip(self.positions, self.rotations, self.mismatches)
        ]

    def __eq__(self, other):
        if isinstance(other, OccurrenceReport):
            return self.positions == other.positions
        return NotImplemented


def rotate(seq, x: int):
    """Rotation by x: move the length-x prefix to the end."""
    arr = as_symbols(seq)
    m = arr.size
    if not 0 <= x < max(m, 1):
        raise ValueError(f"rotation {x} out of range for length {m}")
    out = np.concatenate([arr[x:], arr[:x]])
    if isinstance(seq, Sequence):
        return Sequence(out, seq.alphabet_size)
    return out


def hamming_bounded(a, b, limit: int) -> int | None:
    """Exact Hamming distance if it is <= limit, else None."""
    xa, xb = as_symbols(a), as_symbols(b)
    if xa.size != xb.size:
        raise ValueError("hamming_bounded needs equal lengths")
    count = int(np.count_nonzero(xa != xb))
    return count if count <= limit else None


def matching_pairs(p: int, x: int, m: int) -> set[tuple[int, int]]:
    """Aligned (text index, pattern index) pairs of an occurrence at p with rotation x."""
    if m <= 0:
        raise ValueError("pattern length must be positive")
    if not 0 <= x < m:
        raise ValueError("rotation out of range")
    if p < 0:
        raise ValueError("position must be non-negative")
    return {(i, (i - p + x) % m) for i in range(p, p + m)}


def anchor_of(p: int, x: int, m: int) -> int:
    """Text position where the unrotated pattern's first symbol lands."""
    return p + (m - x) % m


def _rotation_matrix(pat: np.ndarray) -> np.ndarray:
    m = pat.size
    idx = (np.arange(m)[:, None] + np.arange(m)[None, :]) % m
    return pat[idx]


def _brute_small(text: np.ndarray, pat: np.ndarray, k: int):
    m = pat.size
    windows = np.lib.stride_tricks.sliding_window_view(text, m)
    dist = (windows[:, None, :] != _rotation_matrix(pat)[None, :, :]).sum(axis=2)
    best = dist.min(axis=1)
    bestx = dist.argmin(axis=1)
    keep = np.flatnonzero(best <= k)
    return keep, bestx[keep], best[keep]

def _brute_large(text: np.ndarray, pat: np.ndarray, k: int, pos_block=4096):
    # rotation-major with chunked early exit: positions that exceed k stop
    # paying for further columns, so random inputs cost ~O(n m k).
    n, m = text.size, pat.size
    npos = n - m + 1
    best = np.full(npos, m + 1, dtype=np.int64)
    bestx = np.zeros(npos, dtype=np.int64)
    cstep = max(32, 2 * (k + 1))
    for p0 in range(0, npos, pos_block):
        p1 = min(npos, p0 + pos_block)
        base = np.arange(p0, p1)
        for x in range(m):
            rot = np.concatenate([pat[x:], pat[:x]])
            d = np.zeros(p1 - p0, dtype=np.int64)
            alive = np.arange(p1 - p0)
            for c0 in range(0, m, cstep):
                c1 = min(m, c0 + cstep)
                cols = np.arange(c0, c1)
                seg = text[(base[alive][:, None] + cols[None, :])] != rot[c0:c1]
                d[alive] += seg.sum(axis=1)
                alive = alive[d[alive] <= k]
                if alive.size == 0:
                    break
            ok = d <= k
            upd = ok & (d < best[p0:p1])
            best[p0:p1][upd] = d[upd]
            bestx[p0:p1][upd] = x
    keep = np.flatnonzero(best <= k)
    return keep, bestx[keep], best[keep]


def brute_force_cpm(text, pattern, k: int) -> OccurrenceReport:
    """Try every position and every rotation; the testing oracle for all solvers.

    Witness per position is the distance-minimizing rotation (smallest on ties).
    """
    t, p = as_symbols(text), as_symbols(pattern)
    n, m = t.size, p.size
    if m == 0:
        raise ValueError("empty pattern")
    if k < 0:
        raise ValueError("k must be non-negative")
    if n < m:
        return OccurrenceReport([], [], [])
    if (n - m + 1) * m * m <= 1 << 24:
        keep, wx, wd = _brute_small(t, p, k)
    else:
        keep, wx, wd = _brute_large(t, p, k)
    return OccurrenceReport(keep.tolist(), wx.tolist(), wd.tolist())
