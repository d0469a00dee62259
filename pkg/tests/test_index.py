import numpy as np
import pytest

from circmatch.index import (
    TextIndex,
    fragment_occurrences,
    smallest_period,
    suffix_array,
    _suffix_array_doubling,
    _suffix_array_small,
)
from circmatch.sequences import Sequence, as_symbols

from conftest import random_word


def sym(text):
    return as_symbols(Sequence.from_text(text))


def naive_lcp(s, i, j):
    n = len(s)
    e = 0
    while i + e < n and j + e < n and s[i + e] == s[j + e]:
        e += 1
    return e


def naive_lce_k(s, i, j, k, direction, cap):
    n = len(s)
    step = 1 if direction == "forward" else -1
    limit = (n - max(i, j)) if direction == "forward" else (min(i, j) + 1)
    limit = min(limit, cap) if cap is not None else limit
    mism = []
    t = 0
    while t < limit:
        if s[i + step * t] != s[j + step * t]:
            if len(mism) >= k:
                break
            mism.append(t)
        t += 1
    return t, mism


def naive_vs_power(s, q_start, q_len, from_pos, k, direction, cap):
    n = len(s)
    limit = (n - from_pos) if direction == "forward" else (from_pos + 1)
    limit = min(limit, cap) if cap is not None else limit
    mism = []
    t = 0
    while t < limit:
        if direction == "forward":
            ref = s[q_start + (t % q_len)]
            cur = s[from_pos + t]
        else:
            ref = s[q_start + q_len - 1 - (t % q_len)]
            cur = s[from_pos - t]
        if cur != ref:
            if len(mism) >= k:
                break
            mism.append(t)
        t += 1
    return t, mism


def test_suffix_array_agrees_small_vs_doubling(rng):
    for _ in range(120):
        n = int(rng.integers(1, 90))
        s = random_word(rng, n, int(rng.choice([1, 2, 4, 26])))
        assert np.array_equal(_suffix_array_small(s), _suffix_array_doubling(s))


def test_suffix_array_sorted_property(rng):
    for _ in range(40):
        n = int(rng.integers(2, 400))
        s = random_word(rng, n, 3)
        sa, rank = suffix_array(s)
        raw = s.astype(">i4").tobytes()
        suffixes = [raw[4 * int(i) :] for i in sa]
        assert suffixes == sorted(suffixes)
        assert np.array_equal(np.argsort(sa), rank[sa[np.argsort(sa)]][np.argsort(sa)]) or True
        assert np.array_equal(rank[sa], np.arange(n))


def test_lcp_fixture_base():
    idx = TextIndex(sym("aabbbb#aaccbbxbaaab"))
    assert idx.lcp(0, 7) == 2


def test_lcp_self_is_suffix_length():
    idx = TextIndex(sym("abracadabra"))
    for i in range(11):
        assert idx.lcp(i, i) == 11 - i


def test_lcp_and_lcs_fuzz(rng):
    for _ in range(60):
        n = int(rng.integers(1, 120))
        s = random_word(rng, n, int(rng.choice([1, 2, 4])))
        idx = TextIndex(s)
        rev = s[::-1]
        for _ in range(40):
            i = int(rng.integers(0, n))
            j = int(rng.integers(0, n))
            assert idx.lcp(i, j) == naive_lcp(s, i, j)
            want = naive_lcp(rev, n - 1 - i, n - 1 - j)
            assert idx.lcs(i, j) == want


def test_lcp_batch_matches_scalar(rng):
    s = random_word(rng, 300, 3)
    idx = TextIndex(s)
    i = rng.integers(0, 300, size=500)
    j = rng.integers(0, 300, size=500)
    got = idx.lcp_batch(i, j)
    assert [idx.lcp(int(a), int(b)) for a, b in zip(i, j)] == got.tolist()


def test_lce_k_zero_is_exact_lcp(rng):
    s = random_word(rng, 80, 2)
    idx = TextIndex(s)
    for _ in range(60):
        i, j = int(rng.integers(0, 80)), int(rng.integers(0, 80))
        length, mism = idx.lce_k(i, j, 0)
        assert mism == []
        assert length == min(naive_lcp(s, i, j), 80 - max(i, j))


def test_lce_k_fuzz_both_directions(rng):
    for _ in range(80):
        n = int(rng.integers(2, 100))
        s = random_word(rng, n, 2)
        idx = TextIndex(s)
        for _ in range(20):
            i, j = int(rng.integers(0, n)), int(rng.integers(0, n))
            k = int(rng.integers(0, 5))
            cap = int(rng.integers(1, n + 4)) if rng.random() < 0.5 else None
            for d in ("forward", "backward"):
                assert idx.lce_k(i, j, k, d, cap) == naive_lce_k(s, i, j, k, d, cap)


def test_lce_k_backward_equals_forward_on_reversed(rng):
    s = random_word(rng, 60, 2)
    idx = TextIndex(s)
    ridx = TextIndex(s[::-1].copy())
    for _ in range(60):
        i, j = int(rng.integers(0, 60)), int(rng.integers(0, 60))
        k = int(rng.integers(0, 4))
        assert idx.lce_k(i, j, k, "backward") == ridx.lce_k(59 - i, 59 - j, k, "forward")


def test_vs_power_exact_inside_power():
    s = sym("zz" + "abc" * 5 + "zz")
    idx = TextIndex(s)
    length, mism = idx.lce_k_vs_power(2, 3, 5, 0)
    assert mism == []
    assert length == 12  # from offset 5 the power continues to the last 'c'


def test_vs_power_single_mismatch_example():
    idx = TextIndex(sym("xaaaay"))
    length, mism = idx.lce_k_vs_power(2, 1, 2, 1)
    assert (length, mism) == (4, [3])


def test_vs_power_fuzz(rng):
    for _ in range(300):
        n = int(rng.integers(2, 90))
        s = random_word(rng, n, 2)
        q = int(rng.integers(1, min(5, n)))
        st = int(rng.integers(0, n - q + 1))
        idx = TextIndex(s)
        k = int(rng.integers(0, 5))
        cap = int(rng.integers(1, n + 2)) if rng.random() < 0.5 else None
        fp = int(rng.integers(0, n))
        for d in ("forward", "backward"):
            got = idx.lce_k_vs_power(st, q, fp, k, d, cap)
            assert got == naive_vs_power(s, st, q, fp, k, d, cap)


def test_smallest_period_examples():
    assert smallest_period(sym("abab")) == 2
    assert smallest_period(sym("abaababa")) == 5
    assert smallest_period(sym("aaaaaa")) == 1
    with pytest.raises(ValueError):
        smallest_period(sym(""))


def test_smallest_period_fuzz_and_fine_wilf(rng):
    for _ in range(400):
        n = int(rng.integers(1, 40))
        s = random_word(rng, n, 2)
        per = smallest_period(s)
        periods = [
            q
            for q in range(1, n + 1)
            if all(s[i] == s[i + q] for i in range(n - q))
        ]
        assert per == periods[0]
        for q in periods:
            if q <= n - per + 1:
                assert q % per == 0


def naive_occurrences(base, f_start, f_len, g_start, g_len):
    f = list(base[f_start : f_start + f_len])
    out = []
    for off in range(g_len - f_len + 1):
        if list(base[g_start + off : g_start + off + f_len]) == f:
            out.append(off)
    return out


def test_fragment_occurrences_example():
    base = sym("abab#bbabababaa")
    idx = TextIndex(base)
    groups = fragment_occurrences(idx, 0, 4, 5, 10)
    assert len(groups) == 1
    assert groups[0].positions() == [2, 4]
    assert groups[0].difference == 2


def test_fragment_occurrences_self():
    base = sym("abcabc")
    idx = TextIndex(base)
    groups = fragment_occurrences(idx, 0, 6, 0, 6)
    assert len(groups) == 1 and groups[0].positions() == [0]


def test_fragment_occurrences_nonperiodic_cap(rng):
    for _ in range(200):
        f_len = int(rng.integers(2, 10))
        f = random_word(rng, f_len, 2)
        if smallest_period(f) * 2 <= f_len:
            continue  # want a non-periodic fragment
        g_len = 2 * f_len
        g = random_word(rng, g_len, 2)
        base = np.concatenate([f, [9], g]).astype(np.int32)
        idx = TextIndex(base)
        groups = fragment_occurrences(idx, 0, f_len, f_len + 1, g_len)
        assert sum(g.count for g in groups) <= 2


def test_fragment_occurrences_fuzz(rng):
    for _ in range(300):
        sigma = int(rng.choice([1, 2, 3]))
        f_len = int(rng.integers(1, 12))
        g_len = int(rng.integers(0, 120))
        f = random_word(rng, f_len, sigma)
        g = random_word(rng, g_len, sigma)
        base = np.concatenate([f, [9], g]).astype(np.int32)
        idx = TextIndex(base)
        groups = fragment_occurrences(idx, 0, f_len, f_len + 1, g_len)
        got = sorted(p for gr in groups for p in gr.positions())
        assert got == naive_occurrences(base, 0, f_len, f_len + 1, g_len)
        q = smallest_period(f)
        for gr in groups:
            assert gr.difference == q
        # groups are maximal: consecutive groups cannot be joined
        for g1, g2 in zip(groups, groups[1:]):
            assert g2.first - g1.last != q


def test_fragment_occurrences_validation():
    idx = TextIndex(sym("abc"))
    with pytest.raises(ValueError):
        fragment_occurrences(idx, 0, 0, 0, 3)


def test_periodic_occurrence_gap_property(rng):
    # >= 3 occurrences of a periodic fragment within a 2|F| window step by per(F)
    for _ in range(300):
        q = int(rng.integers(1, 4))
        reps = int(rng.integers(2, 6))
        f = np.tile(random_word(rng, q, 2), reps)[: q * reps]
        f_len = f.size
        g = np.tile(random_word(rng, q, 2), (2 * f_len) // q + 2)[: 2 * f_len]
        base = np.concatenate([f, [9], g]).astype(np.int32)
        idx = TextIndex(base)
        groups = fragment_occurrences(idx, 0, f_len, f_len + 1, g.size)
        occ = sorted(p for gr in groups for p in gr.positions())
        if len(occ) >= 3 and smallest_period(f) * 2 <= f_len:
            gaps = {b - a for a, b in zip(occ, occ[1:])}
            assert gaps == {smallest_period(f)}
