import numpy as np
import pytest

from circmatch.sequences import (
    Sequence,
    anchor_of,
    brute_force_cpm,
    hamming_bounded,
    matching_pairs,
    rotate,
)

from conftest import random_word


def s(text):
    return Sequence.from_text(text)


def naive_cpm_positions(text, pat, k):
    """Independent oracle: exhaustive per-rotation scan with plain Python loops."""
    t, p = list(text), list(pat)
    n, m = len(t), len(p)
    found = {}
    for pos in range(n - m + 1):
        best = None
        for x in range(m):
            rot = p[x:] + p[:x]
            d = sum(1 for j in range(m) if t[pos + j] != rot[j])
            if best is None or d < best[0]:
                best = (d, x)
        if best and best[0] <= k:
            found[pos] = best
    return found


def test_rotate_fixture_case():
    assert rotate(s("aabbbb"), 2) == s("bbbbaa")


def test_rotate_identity_and_basic():
    assert rotate(s("abcde"), 0) == s("abcde")
    assert rotate(s("abcde"), 3) == s("deabc")


def test_rotate_rejects_out_of_range():
    with pytest.raises(ValueError):
        rotate(s("abc"), 3)
    with pytest.raises(ValueError):
        rotate(s("abc"), -1)


def test_rotate_inverse_roundtrip(rng):
    for _ in range(200):
        m = int(rng.integers(1, 20))
        w = Sequence(random_word(rng, m, 4))
        x = int(rng.integers(0, m))
        assert rotate(rotate(w, x), (m - x) % m) == w


def test_hamming_bounded_examples():
    assert hamming_bounded(s("bbbbaa"), s("bbxbaa"), 1) == 1
    assert hamming_bounded(s("abc"), s("abc"), 0) == 0
    assert hamming_bounded(s("abc"), s("abd"), 0) is None


def test_hamming_bounded_rejects_unequal_lengths():
    with pytest.raises(ValueError):
        hamming_bounded(s("ab"), s("abc"), 5)


def test_hamming_bounded_fuzz_and_metric_axioms(rng):
    for _ in range(300):
        n = int(rng.integers(1, 40))
        a = random_word(rng, n, 3)
        b = random_word(rng, n, 3)
        c = random_word(rng, n, 3)
        exact = sum(1 for i in range(n) if a[i] != b[i])
        assert hamming_bounded(a, b, n) == exact
        assert hamming_bounded(b, a, n) == exact
        dab = hamming_bounded(a, b, n)
        dbc = hamming_bounded(b, c, n)
        dac = hamming_bounded(a, c, n)
        assert dac <= dab + dbc


def test_matching_pairs_fixture_case():
    assert matching_pairs(4, 2, 6) == {(4, 2), (5, 3), (6, 4), (7, 5), (8, 0), (9, 1)}


def test_matching_pairs_trivial_rotation():
    assert matching_pairs(0, 0, 5) == {(i, i) for i in range(5)}


def test_matching_pairs_formula_and_shape(rng):
    for _ in range(100):
        m = int(rng.integers(1, 16))
        p = int(rng.integers(0, 30))
        x = int(rng.integers(0, m))
        pairs = matching_pairs(p, x, m)
        assert pairs == {(i, (i - p + x) % m) for i in range(p, p + m)}
        assert len(pairs) == m
        assert sorted(j for _, j in pairs) == list(range(m))
        assert (anchor_of(p, x, m), 0) in pairs


def test_brute_force_fixture_case():
    rep = brute_force_cpm(s("aaccbbxbaaab"), s("aabbbb"), 1)
    assert 4 in rep.positions
    i = rep.positions.index(4)
    assert rep.rotations[i] == 2
    assert rep.mismatches[i] == 1


def test_brute_force_k_at_least_m_matches_everywhere():
    rep = brute_force_cpm(s("abcabcab"), s("xyz"), 3)
    assert rep.positions == list(range(6))


def test_brute_force_short_text_and_bad_input():
    assert brute_force_cpm(s("ab"), s("abc"), 1).positions == []
    with pytest.raises(ValueError):
        brute_force_cpm(s("ab"), s(""), 1)


def test_brute_force_matches_exhaustive_scan(rng):
    for _ in range(250):
        sigma = int(rng.choice([1, 2, 4, 26]))
        n = int(rng.integers(1, 64))
        m = int(rng.integers(1, 17))
        k = int(rng.integers(0, m + 1))
        t = random_word(rng, n, sigma)
        p = random_word(rng, m, sigma)
        rep = brute_force_cpm(t, p, k)
        oracle = naive_cpm_positions(t, p, k)
        assert rep.positions == sorted(oracle)
        for pos, x, d in zip(rep.positions, rep.rotations, rep.mismatches):
            assert oracle[pos] == (d, x)


def test_brute_force_exact_case_equals_rotationwise_exact_search(rng):
    for _ in range(60):
        n = int(rng.integers(4, 40))
        m = int(rng.integers(1, 9))
        t = random_word(rng, n, 2)
        p = random_word(rng, m, 2)
        rep = brute_force_cpm(t, p, 0)
        rotations = {tuple(np.concatenate([p[x:], p[:x]])) for x in range(m)}
        exact = [
            pos
            for pos in range(n - m + 1)
            if tuple(t[pos : pos + m]) in rotations
        ]
        assert rep.positions == exact


def test_brute_force_large_path_agrees_with_small_path(rng):
    # force the chunked early-exit path and compare against the tensor path
    from circmatch.sequences import _brute_large, _brute_small

    for _ in range(20):
        n = int(rng.integers(30, 80))
        m = int(rng.integers(4, 20))
        k = int(rng.integers(0, 6))
        t = random_word(rng, n, 2)
        p = random_word(rng, m, 2)
        a = _brute_small(t, p, k)
        b = _brute_large(t, p, k, pos_block=7)
        for xa, xb in zip(a, b):
            assert np.array_equal(xa, xb)
