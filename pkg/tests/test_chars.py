from itertools import product
from math import factorial

import pytest
from hypothesis import given, strategies as st

from qtoric import _linalg as la
from qtoric.chars import (QuasitoricPair, ValidationError, canonical_char_matrix, char_equiv, check_nonsingularity,
                          enumerate_pairs, facet_permutations, invalid_entries, k_action_weights, validate,
                          validate_or_raise)

from conftest import CORPUS, valid_pairs


def all_pairs(max_dim, bound):
    rng = range(-bound, bound + 1)
    for n in range(1, max_dim):
        for m in range(1, max_dim - n + 1):
            for a in product(rng, repeat=m):
                for b in product(rng, repeat=n):
                    yield QuasitoricPair(n, m, a, b)


def test_validity_is_nonsingularity():
    # the product condition a_j b_i in {0, 2} against every vertex minor
    count = 0
    for p in all_pairs(5, 3):
        M = canonical_char_matrix(p, check=False)
        assert validate(p) == check_nonsingularity(M, p.n, p.m), p
        count += 1
    assert count > 70000


def test_invalid_pair_errors():
    p = QuasitoricPair(1, 1, (-3,), (-3,))
    assert not validate(p)
    assert invalid_entries(p)
    with pytest.raises(ValidationError):
        validate_or_raise(p)
    with pytest.raises(ValidationError):
        canonical_char_matrix(p)


def test_canonical_matrix_shape():
    M = canonical_char_matrix(QuasitoricPair(2, 1, (2,), (1, 0))).rows
    assert M == [[1, 0, 0, -1, -1], [0, 1, 0, -1, 0], [0, 0, 1, -2, -1]]


def test_enumerate_matches_brute_force():
    for n, m in [(1, 1), (1, 2), (2, 2), (1, 3)]:
        want = [p for p in all_pairs(n + m, 2) if (p.n, p.m) == (n, m) and validate(p)]
        assert enumerate_pairs(n, m, 2) == sorted(want, key=lambda p: (p.a, p.b))


@given(valid_pairs(), st.randoms(use_true_random=False))
def test_validity_closed_under_sign_and_permutation(p, rnd):
    a, b = list(p.a), list(p.b)
    rnd.shuffle(a)
    rnd.shuffle(b)
    assert validate(QuasitoricPair(p.n, p.m, tuple(a), tuple(b)))
    assert validate(QuasitoricPair(p.n, p.m, tuple(-x for x in a), tuple(-x for x in b)))
    assert validate(p.swapped())


def test_canonical_enumeration_is_sorted_subset():
    for n, m in [(1, 1), (2, 2), (1, 3)]:
        full = set(enumerate_pairs(n, m, 2))
        canon = enumerate_pairs(n, m, 2, canonical=True)
        assert set(canon) <= full
        assert len(set(canon)) == len(canon)


@given(valid_pairs())
def test_k_action_is_free(p):
    assert k_action_weights(p).is_free()


def test_k_action_detects_non_free():
    K = k_action_weights(QuasitoricPair(1, 1, (2,), (1,)))
    bad = type(K)(K.t1_w, (3, 0), K.t2_w, K.t2_z)
    assert not bad.is_free()


@pytest.mark.parametrize("n,m", [(1, 1), (1, 2), (2, 2), (2, 3)])
def test_facet_permutation_count(n, m):
    perms = list(facet_permutations(n, m))
    want = factorial(n + 1) * factorial(m + 1) * (2 if n == m else 1)
    assert len(perms) == len(set(perms)) == want
    assert perms[0] == tuple(range(n + m + 2))


EQUIV_SAMPLE = [p for p in CORPUS if p.n + p.m <= 3][::7]


def test_char_equiv_is_an_equivalence():
    mats = {p: canonical_char_matrix(p) for p in EQUIV_SAMPLE}
    rel = {}
    for p in EQUIV_SAMPLE:
        for q in EQUIV_SAMPLE:
            if (p.n, p.m) != (q.n, q.m):
                continue
            w = char_equiv(mats[p], mats[q], p.n, p.m)
            rel[p, q] = w is not None
            if w is not None:
                assert w.apply(mats[p]) == mats[q].rows
                assert abs(la.det([list(r) for r in w.G])) == 1
    for p in EQUIV_SAMPLE:
        assert rel[p, p]
    for (p, q), v in rel.items():
        assert rel[q, p] == v
        for r in EQUIV_SAMPLE:
            if v and rel.get((q, r)):
                assert rel[p, r]


def test_char_equiv_sees_permuted_vectors():
    p = QuasitoricPair(2, 2, (2, 0), (1, 0))
    q = QuasitoricPair(2, 2, (0, 2), (0, 1))
    assert char_equiv(canonical_char_matrix(p), canonical_char_matrix(q), 2, 2) is not None
