"""Hot loops, JIT-compiled when numba is available (plain Python otherwise)."""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    def _jit(fn):
        return njit(cache=True, nogil=True)(fn)

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is an optional speedup
    def _jit(fn):
        return fn

    HAVE_NUMBA = False


def kasai(s, sa, rank, lcp):
    n = s.shape[0]
    h = 0
    for i in range(n):
        r = rank[i]
        if r == n - 1:
            h = 0
            continue
        j = sa[r + 1]
        while i + h < n and j + h < n and s[i + h] == s[j + h]:
            h += 1
        lcp[r] = h
        if h > 0:
            h -= 1


def failure(s, pi):
    n = s.shape[0]
    pi[0] = 0
    k = 0
    for i in range(1, n):
        while k > 0 and s[i] != s[k]:
            k = pi[k - 1]
        if s[i] == s[k]:
            k += 1
        pi[i] = k


def _insertion_sort(arr, n):
    for i in range(1, n):
        v = arr[i]
        j = i - 1
        while j >= 0 and arr[j] > v:
            arr[j + 1] = arr[j]
            j -= 1
        arr[j + 1] = v


kasai = _jit(kasai)
failure = _jit(failure)
_insertion_sort = _jit(_insertion_sort)


def sweep_anchors(
    rank_f,
    tab_f,
    rank_b,
    tab_b,
    loglut,
    base_len,
    m,
    woff,
    wlen,
    k,
    diff,
):
    """Anchor sweep over one text window, writing interval start/end counters.

    Base layout: pattern twice, separator, window, separator.  Forward
    structures index the base, backward ones the reversed base.  For every
    anchor the two kangaroo mismatch lists are built and the light window
    starts (window coordinates) are accumulated into ``diff``.
    """
    n_limit = wlen - m  # last valid occurrence start in the window
    if n_limit < 0:
        return
    ones = np.empty(2 * k + 2, dtype=np.int64)
    for a in range(wlen):
        # forward: window[a ..] vs pattern[0 ..]
        cap_f = m if m < wlen - a else wlen - a
        n_fwd = 0
        t = 0
        i_abs = woff + a
        while t < cap_f:
            x = i_abs + t
            y = t
            if x == y:
                e = base_len - x
            else:
                rx = rank_f[x]
                ry = rank_f[y]
                if rx > ry:
                    rx, ry = ry, rx
                lv = loglut[ry - rx]
                e1 = tab_f[lv, rx]
                e2 = tab_f[lv, ry - (1 << lv)]
                e = e1 if e1 < e2 else e2
            if e > cap_f - t:
                e = cap_f - t
            t += e
            if t >= cap_f:
                break
            if n_fwd >= k + 1:
                break
            ones[n_fwd] = a + t
            n_fwd += 1
            t += 1
        r_end = a + t - 1  # rightmost certified window position
        # backward: window[.. a-1] vs pattern[.. m-1]
        cap_b = m if m < a else a
        t = 0
        n_bwd = 0
        i_rev = base_len - 1 - (woff + a - 1)
        j_rev = base_len - 2 * m
        while t < cap_b:
            x = i_rev + t
            y = j_rev + t
            if x == y:
                e = base_len - x
            else:
                rx = rank_b[x]
                ry = rank_b[y]
                if rx > ry:
                    rx, ry = ry, rx
                lv = loglut[ry - rx]
                e1 = tab_b[lv, rx]
                e2 = tab_b[lv, ry - (1 << lv)]
                e = e1 if e1 < e2 else e2
            if e > cap_b - t:
                e = cap_b - t
            t += e
            if t >= cap_b:
                break
            if n_bwd >= k + 1:
                break
            ones[n_fwd + n_bwd] = a - 1 - t
            n_bwd += 1
            t += 1
        l_start = a - t  # leftmost certified window position
        n_ones = n_fwd + n_bwd
        plo = a - m + 1
        if plo < 0:
            plo = 0
        if plo < l_start:
            plo = l_start
        phi = a
        if phi > n_limit:
            phi = n_limit
        if phi > r_end - m + 1:
            phi = r_end - m + 1
        if phi < plo:
            continue
        _insertion_sort(ones, n_ones)
        # sweep p over [plo, phi], tracking the one-count of [p, p+m-1]
        lo_ptr = 0
        while lo_ptr < n_ones and ones[lo_ptr] < plo:
            lo_ptr += 1
        hi_ptr = lo_ptr
        while hi_ptr < n_ones and ones[hi_ptr] <= plo + m - 1:
            hi_ptr += 1
        cnt = hi_ptr - lo_ptr
        p = plo
        open_start = -1
        while True:
            if cnt <= k and open_start < 0:
                open_start = p
            elif cnt > k and open_start >= 0:
                diff[open_start] += 1
                diff[p] -= 1
                open_start = -1
            nxt = phi + 1
            if lo_ptr < n_ones and ones[lo_ptr] + 1 < nxt:
                nxt = ones[lo_ptr] + 1
            if hi_ptr < n_ones and ones[hi_ptr] - m + 1 < nxt:
                nxt = ones[hi_ptr] - m + 1
            if nxt > phi:
                break
            p = nxt
            while lo_ptr < n_ones and ones[lo_ptr] < p:
                lo_ptr += 1
                cnt -= 1
            while hi_ptr < n_ones and ones[hi_ptr] <= p + m - 1:
                hi_ptr += 1
                cnt += 1
        if open_start >= 0:
            diff[open_start] += 1
            diff[phi + 1] -= 1


sweep_anchors = _jit(sweep_anchors)
