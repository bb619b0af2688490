from itertools import product

import pytest
import sympy
from hypothesis import given, strategies as st

from qtoric.chars import QuasitoricPair, ValidationError
from qtoric.classify import (GB, NON_BOTT, TAG_CP_CONJ, TAG_CP_SAME, TAG_WPS_CONJ, TAG_WPS_SAME, NormalForm,
                             are_homeomorphic, dual_twist_check, gb_diffeo, is_generalized_bott, normal_form,
                             s_r_pair, witness_holds)
from qtoric.maps import are_isomorphic
from qtoric.ring import make_presentation

from conftest import CORPUS, valid_pairs

x = sympy.Symbol("x")


def sympy_witness(n, a, a2, eps, w):
    """Same identity, expanded and truncated by sympy."""
    lhs = (1 + eps * w * x) * sympy.prod([1 + eps * (c + w) * x for c in a2])
    rhs = sympy.prod([1 + c * x for c in a])
    diff = sympy.Poly(sympy.expand(lhs - rhs), x)
    return all(c == 0 for (k,), c in diff.terms() if k <= n)


def test_hirzebruch_witness():
    wit = gb_diffeo(1, (1,), (3,))
    assert (wit.epsilon, wit.w) == (1, -1)
    assert gb_diffeo(1, (0,), (1,)) is None


@given(st.integers(1, 3), st.lists(st.integers(-3, 3), min_size=1, max_size=3), st.data())
def test_witness_against_sympy(n, a, data):
    a2 = data.draw(st.lists(st.integers(-3, 3), min_size=len(a), max_size=len(a)))
    for eps in (1, -1):
        for w in range(-4, 5):
            assert witness_holds(n, a, a2, eps, w) == sympy_witness(n, a, a2, eps, w)
    wit = gb_diffeo(n, a, a2)
    found = any(sympy_witness(n, a, a2, e, w) for e in (1, -1) for w in range(-12, 13))
    assert (wit is not None) == found


@given(st.integers(1, 3), st.lists(st.integers(-3, 3), min_size=1, max_size=3))
def test_witness_is_symmetric(n, a):
    for a2 in product(range(-2, 3), repeat=len(a)):
        assert (gb_diffeo(n, a, a2) is None) == (gb_diffeo(n, a2, a) is None)


def test_witness_errors():
    with pytest.raises(ValidationError):
        gb_diffeo(1, (1, 2), (1,))
    with pytest.raises(ValidationError):
        gb_diffeo(0, (1,), (1,))


def test_dual_twist_example():
    # on CP^1 only the linear term matters: A = -2 sum(a) / (m + 1)
    assert dual_twist_check(1, (2,), -2)
    assert dual_twist_check(1, (1, 2), -2)
    assert not dual_twist_check(1, (1,), 0)


@given(st.integers(1, 3), st.lists(st.integers(-3, 3), min_size=1, max_size=3), st.integers(-6, 6))
def test_dual_twist_against_sympy(n, a, A):
    # the dual twist is the eps = -1 identity with a' = a
    assert dual_twist_check(n, a, A) == sympy_witness(n, a, a, -1, A)


def test_is_generalized_bott():
    assert is_generalized_bott(QuasitoricPair(1, 2, (0, 0), (1,)))
    assert not is_generalized_bott(QuasitoricPair(1, 1, (2,), (1,)))


@pytest.mark.parametrize("pair,tag", [
    (QuasitoricPair(1, 2, (0, 0), (1,)), TAG_CP_CONJ),
    (QuasitoricPair(1, 3, (2, 0, 0), (1,)), TAG_CP_SAME),
    (QuasitoricPair(2, 1, (2,), (0, 0)), TAG_WPS_CONJ),
    (QuasitoricPair(3, 1, (2,), (1, 0, 0)), TAG_WPS_SAME),
])
def test_item_tags(pair, tag):
    assert normal_form(pair).homeo_tag == tag


def test_n1_m_even_collapses_to_conjugate_sum():
    # the same-orientation sum is homeomorphic to the conjugate one when m is even
    for m in (2, 4):
        assert normal_form(QuasitoricPair(1, m, (2,) + (0,) * (m - 1), (1,))).homeo_tag == TAG_CP_CONJ


def test_hirzebruch_normal_forms():
    assert normal_form(QuasitoricPair(1, 1, (3,), (0,))).vector == (1,)
    assert normal_form(QuasitoricPair(1, 1, (0,), (-2,))).vector == (0,)


def test_s_r_normal_form():
    nf = normal_form(s_r_pair(3, 3, 2, 2))
    assert (nf.kind, nf.s, nf.r) == (NON_BOTT, 2, 2)
    assert nf.pair() == s_r_pair(3, 3, 2, 2)


@given(valid_pairs(), st.randoms(use_true_random=False))
def test_normal_form_invariance(p, rnd):
    a, b = list(p.a), list(p.b)
    rnd.shuffle(a)
    rnd.shuffle(b)
    q = QuasitoricPair(p.n, p.m, tuple(a), tuple(b))
    assert normal_form(q) == normal_form(p)
    assert normal_form(QuasitoricPair(p.n, p.m, tuple(-x for x in p.a), tuple(-x for x in p.b))) == normal_form(p)


@given(valid_pairs())
def test_normal_form_representative_is_homeomorphic(p):
    nf = normal_form(p)
    assert are_isomorphic(make_presentation(nf.pair()), make_presentation(p))
    assert are_homeomorphic(nf.pair(), p)


def test_normal_form_partition_small():
    pairs = [p for p in CORPUS if p.n + p.m <= 3]
    for i, p in enumerate(pairs):
        for q in pairs[i + 1:]:
            if (p.n + p.m) == (q.n + q.m):
                assert (normal_form(p) == normal_form(q)) == are_homeomorphic(p, q), (p, q)


def test_normal_form_errors():
    with pytest.raises(ValidationError):
        NormalForm(NON_BOTT, 2, 2, s=2, r=1)
    with pytest.raises(ValidationError):
        NormalForm("other", 1, 1)
    with pytest.raises(ValidationError):
        normal_form(QuasitoricPair(1, 1, (1,), (1,)))
    assert NormalForm(GB, 1, 1, vector=(1,)).to_json()["s"] is None
