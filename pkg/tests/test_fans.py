import json

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form
from hypothesis import given, strategies as st

from qtoric import _linalg as la
from qtoric.chars import ValidationError, canonical_char_matrix, char_equiv
from qtoric.fans import (Fan, blowup_identity, connected_sum_char_matrix, connected_sum_pair, gb_fan,
                         is_rational_char_matrix, is_smooth, lambda_a, lambda_tilde, lambda_tilde_factorization,
                         lens_cohomology, recognize_wps, singular_cones, star_subdivide, wps_fan, wps_witness)


def cones_containing(F, v):
    """Maximal cones whose interior holds ``v`` (``v`` generic)."""
    hits = 0
    for c in F.max_cones:
        sol = sympy.Matrix([list(r) for r in F.cone_rays(c)]).T.solve(sympy.Matrix(v))
        if all(x > 0 for x in sol):
            hits += 1
    return hits


@given(st.integers(1, 3), st.integers(1, 5), st.data())
def test_fans_are_complete(n, a, data):
    # a generic point lies in the interior of exactly one maximal cone
    v = data.draw(st.lists(st.integers(-50, 50), min_size=n + 1, max_size=n + 1))
    v = [x * 101 + i * 7 + 3 for i, x in enumerate(v)]
    for F in (wps_fan(n, a), gb_fan(n, a)):
        assert cones_containing(F, v) == 1


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("a", [1, 2, 3, 4, 5])
def test_blowup_gives_bundle_fan(n, a):
    F = wps_fan(n, a)
    cone = [F.rays[i] for i in range(n + 1)]
    B = star_subdivide(F, cone, tuple(-int(i == n) for i in range(n + 1)))
    assert B == gb_fan(n, a)
    assert is_smooth(B)[0] and is_smooth(gb_fan(n, a))[0]
    assert blowup_identity(n, a)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("a", [2, 3, 5])
def test_single_singular_cone(n, a):
    F = wps_fan(n, a)
    bad = singular_cones(F)
    assert len(bad) == 1 and bad[0][1] == a
    assert (-1, 0) not in bad[0][0] and all(r[-1] == 0 or r == (-1,) * n + (-a,) for r in bad[0][0])


def test_subdivision_errors():
    F = wps_fan(1, 2)
    with pytest.raises(ValidationError):
        star_subdivide(F, [F.rays[0], F.rays[1]], (1, 1))
    with pytest.raises(ValidationError):
        star_subdivide(F, [(5, 5)], (1, 1))
    with pytest.raises(ValidationError):
        wps_fan(1, 0)
    with pytest.raises(ValidationError):
        Fan(2, ((2, 0), (0, 1)), ((0, 1),))


def test_fan_equality_ignores_indexing():
    F = wps_fan(2, 3)
    G = Fan(F.rank, F.rays[::-1], tuple(tuple(len(F.rays) - 1 - i for i in c) for c in F.max_cones))
    assert F == G and hash(F) == hash(G)
    assert json.loads(json.dumps(F.to_json()))["rank"] == 3


def test_lambda_matrices_are_rational_char_matrices():
    for n in (1, 2, 3):
        for a in (1, 2, 3):
            assert is_rational_char_matrix(lambda_a(n, a))
            assert recognize_wps(lambda_a(n, a)) == a
        for r in range(n + 1):
            assert is_rational_char_matrix(lambda_tilde(n, r))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_lambda_tilde_factorization(n):
    for r in range(1, n + 1):
        A, X, D, S = lambda_tilde_factorization(n, r)
        assert la.matmul(A, X) == lambda_tilde(n, r)
        assert X == la.matmul(la.matmul(D, lambda_a(n, 2)), [[S[i] * int(i == j) for j in range(len(S))]
                                                             for i in range(len(S))])
        assert abs(la.det(A)) == 1
        w = wps_witness(lambda_tilde(n, r))
        assert w.a == 2
        M = la.matmul(w.G, lambda_tilde(n, r))
        assert [[x * s for x, s in zip(row, w.signs)] for row in M] == lambda_a(n, 2)


def test_wps_witness_rejects():
    assert wps_witness([[0, 1, 0], [1, 0, 1]]) is None
    assert recognize_wps([[2, 2, 0], [1, 0, 1]]) is None


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("a,orient", [(1, "opposite"), (1, "same"), (2, "opposite"), (2, "same"), (3, "opposite")])
def test_connected_sum_matrices(n, a, orient):
    M = connected_sum_char_matrix(n, a, orient)
    assert char_equiv(M, canonical_char_matrix(connected_sum_pair(n, a, orient)), n, 1) is not None


def test_connected_sum_errors():
    with pytest.raises(ValidationError):
        connected_sum_char_matrix(2, 3, "same")
    with pytest.raises(ValidationError):
        connected_sum_char_matrix(2, 1, "sideways")


def lens_oracle(n, a):
    """Cellular cochains of S^{2n+1}/μ_a: one cell per dimension, δ^{2k-1} = ×a."""
    top = 2 * n + 1
    delta = {k: sympy.Matrix([[a if k % 2 else 0]]) for k in range(top)}
    out = []
    for i in range(top + 1):
        # kernel of δ^i modulo the image of δ^{i-1}, both inside Z
        ker = 1 if i == top or delta[i][0, 0] == 0 else 0
        img = delta[i - 1][0, 0] if i > 0 else 0
        if not ker:
            out.append("0")
            continue
        snf = smith_normal_form(sympy.Matrix([[img]]), domain=sympy.ZZ)
        d = abs(int(snf[0, 0]))
        out.append("Z" if d == 0 else ("0" if d == 1 else f"Z_{d}"))
    return out


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("a", [1, 2, 3, 4, 5, 6])
def test_lens_cohomology(n, a):
    assert lens_cohomology(n, a) == lens_oracle(n, a)


def test_lens_errors():
    with pytest.raises(ValidationError):
        lens_cohomology(1, 0)
