import pytest

from circmatch.intervals import Interval, IntervalChain
from circmatch.lightcount import (
    SparseBinaryString,
    aligned_light_sum,
    light_fragments,
    window_count_pieces,
)

from test_intervals import elements_by_set


def sbs(length, ones):
    return SparseBinaryString(length, tuple(ones))


def naive_light(v, m, k):
    bits = [0] * v.length
    for o in v.ones:
        bits[o] = 1
    return {
        i
        for i in range(v.length - m + 1)
        if sum(bits[i : i + m]) <= k
    }


def flat(intervals):
    return sorted(v for iv in intervals for v in range(iv.lo, iv.hi + 1))


def test_sparse_binary_validation():
    with pytest.raises(ValueError):
        sbs(4, [2, 2])
    with pytest.raises(ValueError):
        sbs(4, [4])


def test_light_fragments_all_zero():
    assert light_fragments(sbs(12, []), 5, 0) == [Interval(0, 7)]


def test_light_fragments_example():
    assert light_fragments(sbs(10, [2, 5]), 4, 1) == [Interval(0, 1), Interval(3, 6)]


def test_light_fragments_saturated_is_empty():
    assert light_fragments(sbs(6, range(6)), 3, 0) == []


def test_light_fragments_too_short():
    assert light_fragments(sbs(3, [1]), 5, 1) == []


def test_light_fragments_fuzz(rng):
    for _ in range(800):
        n = int(rng.integers(1, 512))
        m = int(rng.integers(1, n + 1))
        k = int(rng.integers(0, 6))
        num = int(rng.integers(0, min(n, 12) + 1))
        ones = sorted(map(int, rng.choice(n, size=num, replace=False)))
        v = sbs(n, ones)
        got = light_fragments(v, m, k)
        assert flat(got) == sorted(naive_light(v, m, k))
        assert len(got) <= len(ones) + 1
        for a, b in zip(got, got[1:]):
            assert a.hi + 1 < b.lo  # disjoint, sorted, maximal


def test_window_count_pieces_cover_range(rng):
    for _ in range(200):
        n = int(rng.integers(2, 100))
        m = int(rng.integers(1, n + 1))
        num = int(rng.integers(0, min(n, 8) + 1))
        ones = sorted(map(int, rng.choice(n, size=num, replace=False)))
        pieces = window_count_pieces(sbs(n, ones), m)
        assert pieces[0][0] == 0 and pieces[-1][1] == n - m
        bits = [0] * n
        for o in ones:
            bits[o] = 1
        for lo, hi, cnt in pieces:
            for i in (lo, hi):
                assert sum(bits[i : i + m]) == cnt


def naive_als(u, v, m, k, q):
    cu = {i: len([o for o in u.ones if i <= o < i + m]) for i in range(u.length - m + 1)}
    cv = {j: len([o for o in v.ones if j <= o < j + m]) for j in range(v.length - m + 1)}
    return {
        i
        for i in cu
        for j in cv
        if cu[i] + cv[j] <= k and (j - i) % q == 0
    }


def materialize_chains(chains):
    out = set()
    for c in chains:
        out |= elements_by_set(c)
    return out


def test_aligned_light_sum_fixture_case():
    u = sbs(29, [14])
    v = sbs(16, [1])
    out = aligned_light_sum(u, v, 15, 2, 4)
    assert out == [IntervalChain(Interval(0, 1), 4, 3)]


def test_aligned_light_sum_trivial_budget_single_chain():
    u = sbs(40, [3, 17])
    v = sbs(30, [9])
    out = aligned_light_sum(u, v, 10, 3, 4)
    assert out == [IntervalChain(Interval(0, 30), 4, 0)]


def test_aligned_light_sum_too_short():
    assert aligned_light_sum(sbs(4, []), sbs(9, []), 5, 1, 2) == []


def test_aligned_light_sum_fuzz(rng):
    for _ in range(600):
        nu = int(rng.integers(1, 128))
        nv = int(rng.integers(1, 128))
        m = int(rng.integers(1, 40))
        k = int(rng.integers(0, 5))
        q = int(rng.integers(1, 9))
        ou = sorted(map(int, rng.choice(nu, size=int(rng.integers(0, min(nu, 6) + 1)), replace=False)))
        ov = sorted(map(int, rng.choice(nv, size=int(rng.integers(0, min(nv, 6) + 1)), replace=False)))
        u, v = sbs(nu, ou), sbs(nv, ov)
        got = aligned_light_sum(u, v, m, k, q)
        assert all(c.difference == q for c in got)
        assert len(got) <= 3 * (len(ou) + 1) * (len(ov) + 1)
        assert materialize_chains(got) == naive_als(u, v, m, k, q)
