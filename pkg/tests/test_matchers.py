import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ctmatch import oracle
from ctmatch.matchers import (
    MatchMode,
    compute_candidates,
    equivalence_test_diff,
    equivalence_test_exact,
    equivalence_test_swap_pd,
    equivalence_test_swap_sn,
    meta_search,
    parallel_meta_search,
    verifying_candidates,
    window_length,
)
from ctmatch.representations import WindowError, pd_representation, skipped_number

SWAP_P = (2, 3, 4, 1, 5, 7, 8, 6, 9)
SWAP_X = (4, 5, 6, 3, 1, 7, 8, 2, 9)


def swap_pd(p, x):
    return equivalence_test_swap_pd(pd_representation(p), pd_representation(x), x)


def swap_sn(p, x):
    return equivalence_test_swap_sn(skipped_number(p), skipped_number(x), x)


def diff(p, x, mode):
    return equivalence_test_diff(pd_representation(p), pd_representation(x), mode)


@pytest.mark.parametrize("j,k,expected", [(4, 5, {4}), (5, 4, {4}), (5, 5, {4, 5}), (3, 7, set())])
def test_compute_candidates(j, k, expected):
    assert compute_candidates(j, k) == expected


def test_window_lengths():
    assert window_length(MatchMode.INSERTION, 5) == 6
    assert window_length(MatchMode.DELETION, 5) == 4
    assert {window_length(m, 5) for m in (MatchMode.EXACT, MatchMode.SWAP_PD, MatchMode.MISMATCH)} == {5}


def test_mode_aliases():
    assert MatchMode("swap") is MatchMode.SWAP_PD
    assert MatchMode("ins") is MatchMode.INSERTION
    assert MatchMode("DELETION") is MatchMode.DELETION
    with pytest.raises(ValueError):
        MatchMode("fuzzy")


def test_swap_pd_examples():
    assert swap_pd(SWAP_P, SWAP_X)
    assert verifying_candidates(pd_representation(SWAP_P), pd_representation(SWAP_X)) == [4]
    assert swap_pd(SWAP_P, SWAP_P)
    assert not swap_pd((1, 2, 3), (3, 2, 1))


def test_swap_sn_examples():
    assert skipped_number(SWAP_X).sn == (0, 0, 0, 3, 1, 0, 0, 2, 0)
    assert skipped_number(SWAP_X).ref[4] is None
    assert swap_sn(SWAP_P, SWAP_X)
    assert swap_sn(SWAP_P, SWAP_P)
    assert not swap_sn((8, 7, 6, 5, 4), (7, 8, 5, 6, 4))


def test_diff_examples():
    assert diff((1, 2, 3), (2, 1, 3), MatchMode.MISMATCH)
    assert diff((1, 2), (1, 2, 3), MatchMode.INSERTION)
    assert diff((1, 2, 3), (3, 1), MatchMode.DELETION)
    assert oracle.brute_force_diff((1, 2, 3), (3, 1), MatchMode.DELETION).matched


def test_mismatch_keeps_prefix_and_suffix():
    # (2,3,4,1) and (5,7,8,6,9) kept, the middle value replaced
    p = (2, 3, 4, 1, 5, 7, 8, 6, 9)
    x = (3, 4, 9, 2, 5, 6, 8, 1, 7)
    assert diff(p, x, "mismatch")
    assert oracle.brute_force_diff(p, x, MatchMode.MISMATCH).witness == 5


def test_diff_rejects_bad_lengths():
    with pytest.raises(WindowError):
        diff((1, 2, 3), (1, 2, 3), MatchMode.INSERTION)
    with pytest.raises(WindowError):
        diff((1,), (), MatchMode.DELETION)
    with pytest.raises(ValueError):
        diff((1, 2), (1, 2), MatchMode.EXACT)


def test_exact():
    assert equivalence_test_exact(pd_representation((1, 3, 2)), pd_representation((4, 9, 5)))
    assert not equivalence_test_exact(pd_representation((1, 3, 2)), pd_representation((4, 5, 9)))


def test_meta_search_examples():
    t = (5, 1, 4, 2)
    assert meta_search(t, t, "exact").occurrences == [1]
    assert meta_search((1, 2), (2, 1, 3), "swap").occurrences == [1, 2]
    assert meta_search((1, 2), (2, 1, 3), "swap-sn").occurrences == [1, 2]
    assert meta_search((1, 2, 3), (2, 1, 3), "mismatch").occurrences == [1]


def test_meta_search_errors():
    with pytest.raises(WindowError):
        meta_search((), (1, 2), "exact")
    with pytest.raises(WindowError):
        meta_search((1, 2, 3), (1, 2), "swap")
    with pytest.raises(WindowError):
        meta_search((1, 2), (1, 2), "insert")


def test_report_fields():
    r = meta_search((1, 2), (3, 1, 2, 5, 4), "exact", record=True)
    assert r.windows == 4 and r.window_length == 2
    assert len(r.per_window) == 4 and sum(r.per_window) == r.comparisons
    assert r.mean_comparisons == r.comparisons / 4


def perms(m):
    return list(itertools.permutations(range(m)))


@pytest.mark.parametrize("m", range(2, 6))
def test_swap_symmetry_and_representation_agreement(m):
    ps = perms(m)
    for p in ps:
        for x in ps:
            a = swap_pd(p, x)
            assert a == swap_pd(x, p)
            assert a == swap_sn(p, x) == swap_sn(x, p)


@pytest.mark.parametrize("m", range(2, 7))
def test_at_most_one_candidate_verifies(m):
    ps = perms(m)
    rng = random.Random(m)
    for _ in range(3000):
        p, x = rng.choice(ps), rng.choice(ps)
        assert len(verifying_candidates(pd_representation(p), pd_representation(x))) <= 1


def test_swap_representations_agree_on_longer_random_pairs():
    rng = random.Random(7)
    for _ in range(10_000):
        m = rng.randint(2, 32)
        p = rng.sample(range(1000), m)
        x = rng.sample(range(1000), m)
        if rng.random() < 0.5:
            # force near-misses: swap a random adjacent pair of a copy of p's shape
            x = list(p)
            i = rng.randrange(m - 1)
            x[i], x[i + 1] = x[i + 1], x[i]
            if rng.random() < 0.3:
                j = rng.randrange(m - 1)
                x[j], x[j + 1] = x[j + 1], x[j]
        assert swap_pd(p, x) == swap_sn(p, x)


@pytest.mark.parametrize("m", range(1, 6))
def test_diff_modes_match_split_oracle(m):
    ps = perms(m)
    for p in ps:
        for x in ps:
            assert diff(p, x, "mismatch") == oracle.brute_force_diff(p, x, MatchMode.MISMATCH).matched
        for x in perms(m + 1):
            assert diff(p, x, "insert") == oracle.brute_force_diff(p, x, MatchMode.INSERTION).matched
        if m >= 2:
            for x in perms(m - 1):
                assert diff(p, x, "delete") == oracle.brute_force_diff(p, x, MatchMode.DELETION).matched


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_meta_search_matches_oracle(data):
    mode = data.draw(st.sampled_from(list(MatchMode)))
    low = 2 if mode is MatchMode.DELETION else 1
    p = data.draw(st.lists(st.integers(0, 5), min_size=low, max_size=8))
    t = data.draw(st.lists(st.integers(0, 5), min_size=len(p) + 1, max_size=40))
    assert meta_search(p, t, mode).occurrences == oracle.brute_force_search(p, t, mode)


def test_parallel_search_merges_chunks():
    rng = random.Random(11)
    t = [rng.random() for _ in range(400)]
    p = t[100:106]
    for mode in ("swap", "insert", "delete"):
        full = meta_search(p, t, mode)
        par = parallel_meta_search(p, t, mode, chunks=3, workers=2)
        assert par.occurrences == full.occurrences
        assert par.windows == full.windows
