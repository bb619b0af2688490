import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from qtoric import _linalg as la

matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices)
def test_snf_transforms(A):
    U, D, V = la.smith_normal_form(A)
    assert la.matmul(la.matmul(U, A), V) == D
    assert abs(la.det(U)) == 1 and abs(la.det(V)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    for i in range(len(D)):
        for j in range(len(D[0])):
            if i != j:
                assert D[i][j] == 0
    nz = [x for x in diag if x]
    assert all(x > 0 for x in nz)
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))


@given(matrices)
def test_invariant_factors_match_sympy(A):
    S = sympy_snf(sympy.Matrix(A), domain=sympy.ZZ)
    theirs = sorted(abs(S[i, i]) for i in range(min(S.shape)) if S[i, i] != 0)
    assert sorted(x for x in la.invariant_factors(A) if x) == theirs


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n),
                                                     min_size=n, max_size=n)))
def test_det_and_rank_match_sympy(A):
    M = sympy.Matrix(A)
    assert la.det(A) == M.det()
    assert la.rank(A) == M.rank()


@given(matrices)
def test_cokernel_counts(A):
    rank, torsion = la.cokernel(A, rows=len(A))
    nz = [x for x in la.invariant_factors(A) if x]
    assert rank == len(A) - len(nz)
    assert torsion == [x for x in nz if x > 1]


def test_integer_inverse():
    A = [[2, 1], [1, 1]]
    assert la.matmul(A, la.integer_inverse(A)) == la.identity(2)
    with pytest.raises(ValueError):
        la.integer_inverse([[2, 0], [0, 1]])


def test_solve_rational():
    A = [[1, 0], [0, 2], [1, 2]]
    assert la.solve_rational(A, [1, 2, 3]) == [1, 1]
    assert la.solve_rational(A, [1, 2, 2]) is None


def test_primitive_and_sign():
    assert la.primitive([0, -4, 6]) == (0, -2, 3)
    assert la.sign_normalized([0, -4, 6]) == (0, 2, -3)
    assert la.divisors(12) == [1, 2, 3, 4, 6, 12]
