import pytest
from hypothesis import given, strategies as st

from qtoric.chars import QuasitoricPair, ValidationError, canonical_char_matrix, char_equiv, k_action_weights
from qtoric.classify import is_generalized_bott, s_r_pair
from qtoric.maps import RingMap, enumerate_automorphisms, find_isomorphisms, is_isomorphism
from qtoric.realize import (SphereMap, equivalence_by_classes, equivalence_isomorphism, facet_classes, generators,
                            induced_matrix, plan_realization, preserves_orbits, realize_automorphism, standard_map,
                            word_table)
from qtoric.ring import make_presentation
from qtoric.verify import WITH_G, WITH_H, I, NEG, case_listed

from conftest import CORPUS

NON_BOTT = [p for p in CORPUS if not is_generalized_bott(p)]


def R(*v):
    return RingMap.of(*v)


def test_standard_maps_and_theta():
    p = s_r_pair(2, 3, 2, 1)
    K = k_action_weights(p)
    assert preserves_orbits(SphereMap.identity(2, 3), K).theta == ((1, 0), (0, 1))
    assert preserves_orbits(standard_map("f", p), K).theta == ((-1, 0), (0, -1))
    assert induced_matrix(standard_map("f", p), p) == R(-1, 0, 0, -1)
    assert induced_matrix(standard_map("g", p), p) == R(-1, 0, 2, 1)
    q = s_r_pair(3, 2, 1, 2)
    assert induced_matrix(standard_map("h", q), q) == R(1, 1, 0, -1)


def test_standard_map_parity_errors():
    with pytest.raises(ValidationError, match="m odd"):
        standard_map("g", s_r_pair(2, 2, 1, 1))
    with pytest.raises(ValidationError, match="n odd"):
        standard_map("h", s_r_pair(2, 2, 1, 1))
    with pytest.raises(ValidationError):
        standard_map("g", QuasitoricPair(1, 1, (1,), (0,)))
    with pytest.raises(ValidationError):
        standard_map("k", s_r_pair(1, 1, 1, 1))


def test_sphere_map_group_laws():
    F = SphereMap((1, 2, 0), (1, 0), (True, False, True), (False, True))
    G = SphereMap((2, 0, 1), (0, 1), (False, False, True), (True, True))
    e = SphereMap.identity(2, 1)
    assert F.compose(F.inverse()) == e == F.inverse().compose(F)
    assert F.compose(e) == F
    assert F.compose(G).inverse() == G.inverse().compose(F.inverse())
    assert F.swap_factors().swap_factors() == F
    assert F.to_json()["perm_w"] == [2, 3, 1]
    with pytest.raises(ValidationError):
        SphereMap((0, 0), (0,), (False, False), (False,))


SAMPLED_MAPS = [(p, g.sphere_map) for p in NON_BOTT if p.n + p.m <= 3 for g in generators(p) if g.sphere_map]


@given(st.sampled_from(SAMPLED_MAPS), st.data())
def test_induced_matrix_is_multiplicative(pf, data):
    p, F = pf
    G = data.draw(st.sampled_from([g for q, g in SAMPLED_MAPS if q == p]))
    assert induced_matrix(F.compose(G), p) == induced_matrix(F, p) @ induced_matrix(G, p)


@given(st.sampled_from(NON_BOTT))
def test_f_reverses_the_torus(p):
    assert preserves_orbits(standard_map("f", p), k_action_weights(p)).theta == ((-1, 0), (0, -1))


def test_realize_examples():
    p = s_r_pair(2, 3, 2, 1)
    assert realize_automorphism(p, RingMap.identity()).word == ()
    assert realize_automorphism(p, R(-1, 0, 2, 1)).word == ("g",)
    r = realize_automorphism(p, R(1, 0, -2, -1))
    assert r.word == ("f", "g")
    assert induced_matrix(r.sphere_map, p) == R(1, 0, -2, -1)
    # θ acts on the torus; the ring map is its transpose
    assert r.theta == ((1, -2), (0, -1))
    with pytest.raises(ValidationError):
        realize_automorphism(p, R(1, 1, 0, 1))


def test_case_lists_are_word_sets():
    # without both g and h the listed groups are exactly what the generators reach
    for (n, m, s, r) in [(2, 2, 1, 1), (2, 3, 2, 1), (3, 2, 1, 2), (4, 4, 2, 1)]:
        p = s_r_pair(n, m, s, r)
        listed = case_listed(n, m, s, r)
        assert set(enumerate_automorphisms(make_presentation(p))) == listed
        assert set(word_table(p)) >= listed
    assert case_listed(2, 3, 2, 1) == WITH_G and case_listed(3, 2, 1, 2) == WITH_H
    assert case_listed(2, 2, 1, 1) == {I, NEG}


def test_order_with_g_and_h():
    p = s_r_pair(3, 3, 2, 2)
    got = set(enumerate_automorphisms(make_presentation(p)))
    assert WITH_G | WITH_H <= got
    assert len(got) == 8
    assert R(-1, -1, 2, 1) in got


def test_plan_case_two():
    p = s_r_pair(2, 3, 2, 1)
    plan = plan_realization(p, p, R(-1, 0, 2, 1))
    assert plan.reference == RingMap.identity()
    assert plan.realization.word == ("g",)


def test_plan_hirzebruch():
    p1, p2 = QuasitoricPair(1, 1, (1,), (0,)), QuasitoricPair(1, 1, (3,), (0,))
    plan = plan_realization(p1, p2, R(1, 0, 1, 1))
    assert plan.reference == R(-3, -2, 1, 1)
    assert plan.automorphism == R(-1, -2, 0, 1)
    assert plan.automorphism @ plan.reference == R(1, 0, 1, 1)
    assert plan.realization.word == ("Type2",)
    with pytest.raises(ValidationError):
        plan_realization(p1, p2, R(1, 0, 0, 1))


@given(st.sampled_from(NON_BOTT))
def test_plans_factor_every_automorphism(p):
    for G in enumerate_automorphisms(make_presentation(p)):
        plan = plan_realization(p, p, G)
        assert plan.automorphism @ plan.reference == G


def test_facet_classes_match_ring():
    # the last facet of each block carries one of the generators
    p = s_r_pair(2, 2, 1, 1)
    cls = facet_classes(p)
    assert len(cls) == p.n + p.m + 2
    assert cls[p.n] == (1, 0) and cls[-1] == (0, 1)


EQUIV_PAIRS = [p for p in CORPUS if p.n + p.m <= 3]


def test_equivalence_by_classes_against_exhaustive_search():
    # two independent routes to char equivalence: GL2 on facet classes, and the full search
    mats = {p: canonical_char_matrix(p) for p in EQUIV_PAIRS}
    positives = 0
    for p in EQUIV_PAIRS[::3]:
        for q in EQUIV_PAIRS:
            if (p.n, p.m) != (q.n, q.m):
                continue
            w = char_equiv(mats[p], mats[q], p.n, p.m)
            iso = equivalence_by_classes(p, q)
            assert (w is None) == (iso is None), (p, q)
            if w is not None:
                positives += 1
                R1, R2 = make_presentation(p), make_presentation(q)
                assert is_isomorphism(iso, R2, R1)
                assert is_isomorphism(equivalence_isomorphism(p, q, w), R2, R1)
    assert positives > len(EQUIV_PAIRS[::3])


def test_equivalence_of_extreme_shapes():
    # r = 1 and r = n in the same orientation are char equivalent
    for n in (3, 4):
        p, q = s_r_pair(n, 1, 1, 1), QuasitoricPair(n, 1, (2,), (1,) * n)
        assert equivalence_by_classes(p, q) is not None
        assert find_isomorphisms(make_presentation(q), make_presentation(p))
