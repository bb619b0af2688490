"""Characteristic matrices over a product of two simplices.

Facets of ``Δ^n × Δ^m`` are ordered

    F_1, ..., F_n, F'_1, ..., F'_m, F_{n+1}, F'_{m+1}

so column ``k`` of a characteristic matrix belongs to facet ``facet_order[k]``.
A vertex omits exactly one ``F`` and one ``F'``; the columns of the other
``n + m`` facets must form a unimodular matrix.
"""

from dataclasses import dataclass
from itertools import permutations, product
from typing import List, Optional, Sequence, Tuple

from . import _linalg as la


class ValidationError(ValueError):
    """Input that does not describe a valid object (bad pair, bad matrix shape)."""


@dataclass(frozen=True)
class QuasitoricPair:
    """The data ``(n, m, a, b)`` of the manifold M_{a,b} over ``Δ^n × Δ^m``."""

    n: int
    m: int
    a: Tuple[int, ...]
    b: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        if self.n < 1 or self.m < 1:
            raise ValidationError(f"need n >= 1 and m >= 1, got n={self.n}, m={self.m}")
        if len(self.a) != self.m:
            raise ValidationError(f"a must have length m={self.m}, got {len(self.a)}")
        if len(self.b) != self.n:
            raise ValidationError(f"b must have length n={self.n}, got {len(self.b)}")

    def swapped(self) -> "QuasitoricPair":
        """The same manifold with the two simplex factors exchanged."""
        return QuasitoricPair(self.m, self.n, self.b, self.a)

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "a": list(self.a), "b": list(self.b)}

    def __str__(self) -> str:
        fmt = lambda v: "(" + ",".join(map(str, v)) + ")"
        return f"M_{{{fmt(self.a)},{fmt(self.b)}}} (n={self.n}, m={self.m})"


def invalid_entries(pair: QuasitoricPair) -> List[Tuple[int, int]]:
    """1-based ``(i, j)`` with ``1 - a_j b_i`` not a unit."""
    return [(i + 1, j + 1) for i, bi in enumerate(pair.b) for j, aj in enumerate(pair.a)
            if aj * bi not in (0, 2)]


def validate(pair: QuasitoricPair) -> bool:
    return not invalid_entries(pair)


def validate_or_raise(pair: QuasitoricPair) -> None:
    bad = invalid_entries(pair)
    if bad:
        i, j = bad[0]
        raise ValidationError(
            f"1 - a_{j}*b_{i} = {1 - pair.a[j - 1] * pair.b[i - 1]} is not +-1 for {pair}")


# -- matrices ---------------------------------------------------------------

def facet_order(n: int, m: int) -> List[str]:
    return ([f"F_{i}" for i in range(1, n + 1)] + [f"F'_{j}" for j in range(1, m + 1)]
            + [f"F_{n + 1}", f"F'_{m + 1}"])


def w_facet_column(n: int, m: int, i: int) -> int:
    """Column of ``F_i`` (1-based ``i``)."""
    return i - 1 if i <= n else n + m


def z_facet_column(n: int, m: int, j: int) -> int:
    """Column of ``F'_j`` (1-based ``j``)."""
    return n + j - 1 if j <= m else n + m + 1


@dataclass(frozen=True)
class CharMatrix:
    """An ``(n+m) × (n+m+2)`` integer matrix with the facet order above."""

    entries: Tuple[Tuple[int, ...], ...]
    n: int
    m: int

    @property
    def rows(self) -> la.Matrix:
        return [list(r) for r in self.entries]

    @property
    def facet_order(self) -> List[str]:
        return facet_order(self.n, self.m)

    def to_json(self) -> list:
        return self.rows


def _rows(M) -> la.Matrix:
    return M.rows if isinstance(M, CharMatrix) else la.as_matrix(M)


def canonical_char_matrix(pair: QuasitoricPair, check: bool = True) -> CharMatrix:
    """``[I | last two columns]`` built from ``(a, b)``; ``check=False`` skips validation."""
    if check:
        validate_or_raise(pair)
    n, m = pair.n, pair.m
    l = n + m
    rows = []
    for r in range(l):
        row = [int(r == c) for c in range(l)]
        if r < n:
            row += [-1, -pair.b[r]]
        else:
            row += [-pair.a[r - n], -1]
        rows.append(tuple(row))
    return CharMatrix(tuple(rows), n, m)


def vertices(n: int, m: int) -> List[Tuple[int, int]]:
    """Vertices as the omitted pair ``(i, j)`` of facets ``F_i``, ``F'_j``."""
    return [(i, j) for i in range(1, n + 2) for j in range(1, m + 2)]


def vertex_columns(n: int, m: int, i: int, j: int) -> List[int]:
    skip = {w_facet_column(n, m, i), z_facet_column(n, m, j)}
    return [c for c in range(n + m + 2) if c not in skip]


def check_nonsingularity(M, n: int, m: int) -> bool:
    """Every vertex of ``Δ^n × Δ^m`` selects a unimodular set of columns.

    Raises:
      ValidationError: if ``M`` is not ``(n+m) × (n+m+2)``.
    """
    rows = _rows(M)
    if len(rows) != n + m or any(len(r) != n + m + 2 for r in rows):
        raise ValidationError(f"expected a {n + m}x{n + m + 2} matrix")
    for i, j in vertices(n, m):
        if abs(la.det(la.columns(rows, vertex_columns(n, m, i, j)))) != 1:
            return False
    return True


def enumerate_pairs(n: int, m: int, bound: int, canonical: bool = False) -> List[QuasitoricPair]:
    """Valid pairs with entries in ``[-bound, bound]``.

    The order is lexicographic in ``(a, b)``.  With ``canonical=True`` each
    vector is sorted (nonzero entries first, descending) and duplicates are
    dropped.
    """
    rng = range(-bound, bound + 1)
    out, seen = [], set()
    for a in product(rng, repeat=m):
        for b in product(rng, repeat=n):
            if any(x * y not in (0, 2) for x in a for y in b):
                continue
            if canonical:
                key = (tuple(sorted(a, key=_shape_key)), tuple(sorted(b, key=_shape_key)))
                if key in seen:
                    continue
                seen.add(key)
                out.append(QuasitoricPair(n, m, *key))
            else:
                out.append(QuasitoricPair(n, m, a, b))
    if canonical:
        out.sort(key=lambda p: (p.a, p.b))
    return out


def _shape_key(x: int):
    return (x == 0, -x)


# -- the free torus action ---------------------------------------------------

@dataclass(frozen=True)
class KActionWeights:
    """Exponents of ``(t1, t2)`` on ``(w_1..w_{n+1}; z_1..z_{m+1})``."""

    t1_w: Tuple[int, ...]
    t1_z: Tuple[int, ...]
    t2_w: Tuple[int, ...]
    t2_z: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.t1_w) - 1

    @property
    def m(self) -> int:
        return len(self.t1_z) - 1

    def columns(self) -> List[Tuple[int, int]]:
        """Weight ``(e1, e2)`` of each coordinate, w-block then z-block."""
        return (list(zip(self.t1_w, self.t2_w)) + list(zip(self.t1_z, self.t2_z)))

    def matrix(self) -> la.Matrix:
        return [list(self.t1_w) + list(self.t1_z), list(self.t2_w) + list(self.t2_z)]

    def minors(self) -> List[Tuple[int, int, int]]:
        """``(k, l, det)`` for each w-coordinate ``k`` and z-coordinate ``l`` (0-based)."""
        cols = self.columns()
        n1 = self.n + 1
        out = []
        for k in range(n1):
            for l in range(self.m + 1):
                (p, q), (r, s) = cols[k], cols[n1 + l]
                out.append((k, l, p * s - q * r))
        return out

    def is_free(self) -> bool:
        # points with exactly one nonzero coordinate per sphere have the
        # largest isotropy; it is trivial iff the minor is a unit
        return all(abs(d) == 1 for _, _, d in self.minors())


def k_action_weights(pair: QuasitoricPair) -> KActionWeights:
    validate_or_raise(pair)
    return KActionWeights(
        t1_w=(1,) * (pair.n + 1),
        t1_z=tuple(pair.a) + (0,),
        t2_w=tuple(pair.b) + (0,),
        t2_z=(1,) * (pair.m + 1),
    )


# -- equivalence --------------------------------------------------------------

@dataclass(frozen=True)
class CharEquivWitness:
    """``M2 = G · (M1 · diag(signs))[:, perm]``."""

    G: Tuple[Tuple[int, ...], ...]
    signs: Tuple[int, ...]
    perm: Tuple[int, ...]

    def apply(self, M1) -> la.Matrix:
        rows = _rows(M1)
        signed = [[x * s for x, s in zip(row, self.signs)] for row in rows]
        return la.matmul(self.G, la.columns(signed, self.perm))

    def to_json(self) -> dict:
        return {"G": [list(r) for r in self.G], "signs": list(self.signs), "perm": list(self.perm)}


def _block_permutations(n: int, m: int):
    for sw in permutations(range(1, n + 2)):
        for sz in permutations(range(1, m + 2)):
            perm = [0] * (n + m + 2)
            for i in range(1, n + 2):
                perm[w_facet_column(n, m, i)] = w_facet_column(n, m, sw[i - 1])
            for j in range(1, m + 2):
                perm[z_facet_column(n, m, j)] = z_facet_column(n, m, sz[j - 1])
            yield tuple(perm)


def facet_permutations(n: int, m: int, polytope: str = "product"):
    """Column permutations induced by combinatorial automorphisms, identity first."""
    if polytope == "simplex":
        yield from permutations(range(n + 2))
        return
    if polytope != "product":
        raise ValidationError(f"unknown polytope {polytope!r}")
    yield from _block_permutations(n, m)
    if n == m:
        # exchange the two factors: F_i <-> F'_i
        for perm in _block_permutations(n, m):
            swap = [0] * (n + m + 2)
            for i in range(1, n + 2):
                swap[w_facet_column(n, m, i)] = perm[z_facet_column(n, m, i)]
                swap[z_facet_column(n, m, i)] = perm[w_facet_column(n, m, i)]
            yield tuple(swap)


def char_equiv(M1, M2, n: int, m: int, polytope: str = "product") -> Optional[CharEquivWitness]:
    """Search for ``(G, signs, perm)`` with ``M2 = G · (M1 · diag(signs))[:, perm]``.

    ``polytope="product"`` treats the columns as facets of ``Δ^n × Δ^m``;
    ``polytope="simplex"`` treats an ``(n+1) × (n+2)`` matrix over
    ``Δ^{n+1}`` and allows every facet permutation (``m`` is ignored).
    Exhaustive: every facet permutation and every sign vector is tried, with
    the first sign fixed (a global sign is absorbed by ``G``).
    """
    A, B = _rows(M1), _rows(M2)
    l = len(A)
    if len(B) != l or any(len(r) != len(A[0]) for r in A + B):
        raise ValidationError("matrices of different shapes")
    d = len(A[0])
    basis = list(range(l))
    B_basis = la.columns(B, basis)
    for perm in facet_permutations(n, m, polytope):
        P = la.columns(A, perm)
        PB = la.columns(P, basis)
        inv = la.rational_inverse(PB)
        if inv is None:
            continue
        for tail in product((1, -1), repeat=l - 1):
            sb = (1,) + tail
            # G = B_basis · diag(sb) · PB^{-1}
            G = [[sum(B_basis[r][k] * sb[k] * inv[k][c] for k in range(l)) for c in range(l)]
                 for r in range(l)]
            if any(x.denominator != 1 for row in G for x in row):
                continue
            G = [[int(x) for x in row] for row in G]
            if abs(la.det(G)) != 1:
                continue
            signs_p = list(sb)
            ok = True
            for c in range(l, d):
                img = la.matvec(G, [row[c] for row in P])
                col = [row[c] for row in B]
                if img == col:
                    signs_p.append(1)
                elif img == [-x for x in col]:
                    signs_p.append(-1)
                else:
                    ok = False
                    break
            if not ok:
                continue
            signs = [0] * d
            for k, src in enumerate(perm):
                signs[src] = signs_p[k]
            return CharEquivWitness(tuple(map(tuple, G)), tuple(signs), tuple(perm))
    return None
