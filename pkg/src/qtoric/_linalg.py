"""Exact integer linear algebra on small dense matrices.

Matrices are lists of row lists of Python ints (arbitrary precision).  Nothing
here uses floating point.
"""

from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

Matrix = List[List[int]]


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    return [[int(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(A: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*A)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence[int]], v: Sequence[int]) -> List[int]:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def columns(A: Sequence[Sequence[int]], idx: Sequence[int]) -> Matrix:
    return [[row[j] for j in idx] for row in A]


def det(A: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(row) for row in A]
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rational_inverse(A: Sequence[Sequence[int]]) -> Optional[List[List[Fraction]]]:
    """Inverse over Q by Gauss-Jordan, or None if singular."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return None
        M[c], M[piv] = M[piv], M[c]
        p = M[c][c]
        M[c] = [x / p for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def integer_inverse(A: Sequence[Sequence[int]]) -> Matrix:
    """Inverse of a unimodular integer matrix.

    Raises:
      ValueError: if ``A`` is singular or its inverse is not integral.
    """
    inv = rational_inverse(A)
    if inv is None:
        raise ValueError("matrix is singular")
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


def solve_rational(A: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[List[Fraction]]:
    """Exact solution of ``A x = b`` for ``A`` of full column rank, else None.

    ``A`` may be tall; the system must be consistent.
    """
    rows, cols = len(A), len(A[0]) if A else 0
    M = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if piv is None:
            return None
        M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        M[r] = [x / p for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    if any(M[i][cols] != 0 for i in range(r, rows)):
        return None
    return [M[i][cols] for i in range(cols)]


def rank(A: Sequence[Sequence[int]]) -> int:
    M = [[Fraction(x) for x in row] for row in A]
    rows = len(M)
    cols = len(M[0]) if M else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, rows):
            if M[i][c] != 0:
                f = M[i][c] / M[r][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        r += 1
    return r


def smith_normal_form(A: Sequence[Sequence[int]]) -> Tuple[Matrix, Matrix, Matrix]:
    """Smith normal form with transforms.

    Returns ``(U, D, V)`` with ``U @ A @ V == D``, ``U`` and ``V`` unimodular,
    ``D`` diagonal with non-negative entries ``d_1 | d_2 | ...`` followed by
    zeros.  Works for any shape, including matrices with no columns.
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    D = [list(row) for row in A]
    U = identity(rows)
    V = identity(cols)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero magnitude in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if D[i][j] != 0 and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            p = D[t][t]
            for i in range(t + 1, rows):
                q = D[i][t] // p
                if q:
                    D[i] = [x - q * y for x, y in zip(D[i], D[t])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[t])]
                if D[i][t] != 0:
                    done = False
            for j in range(t + 1, cols):
                q = D[t][j] // p
                if q:
                    for M in (D, V):
                        for row in M:
                            row[j] -= q * row[t]
                if D[t][j] != 0:
                    done = False
            if done:
                # divisibility: p must divide the rest of the block
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if D[i][j] % p), None)
                if bad is None:
                    break
                D[t] = [x + y for x, y in zip(D[t], D[bad[0]])]
                U[t] = [x + y for x, y in zip(U[t], U[bad[0]])]
                continue
            # a remainder smaller than p exists; move it to the pivot
            best = None
            for i in range(t, rows):
                if D[i][t] != 0 and (best is None or abs(D[i][t]) < abs(D[best][t])):
                    best = i
            swap_rows(t, best)
            bestc = None
            for j in range(t, cols):
                if D[t][j] != 0 and (bestc is None or abs(D[t][j]) < abs(D[t][bestc])):
                    bestc = j
            swap_cols(t, bestc)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, D, V


def invariant_factors(A: Sequence[Sequence[int]]) -> List[int]:
    _, D, _ = smith_normal_form(A)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i] != 0]


def cokernel(A: Sequence[Sequence[int]], rows: Optional[int] = None) -> Tuple[int, List[int]]:
    """Free rank and torsion coefficients (> 1) of ``Z^rows / im(A)``."""
    if rows is None:
        rows = len(A)
    if not A or not A[0]:
        return rows, []
    factors = invariant_factors(A)
    return rows - len(factors), [d for d in factors if d > 1]


def primitive(v: Sequence[int]) -> Tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def sign_normalized(v: Sequence[int]) -> Tuple[int, ...]:
    """Primitive vector with first nonzero entry positive."""
    p = primitive(v)
    for x in p:
        if x:
            return p if x > 0 else tuple(-y for y in p)
    return p


def divisors(n: int) -> List[int]:
    n = abs(n)
    if n == 0:
        raise ValueError("divisors of zero")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]
