"""Graded ring maps between the rings ``H^*(M_{a,b})`` given by 2×2 matrices.

A matrix ``G`` acts by ``(φ(x1); φ(x2)) = G (x1; x2)``.  The matrix product
``A @ B`` is the map "apply ``A``, then ``B``", i.e. ``φ_B ∘ φ_A``.  A linear
form with coefficient row ``(c1, c2)`` is sent to ``(c1, c2) @ G``.

Isomorphisms are found structurally and every candidate is checked with
:func:`is_isomorphism`:

* ``n != m``: the relation of lower degree spans its graded piece of the
  ideal, so an isomorphism permutes its linear factors up to sign.  Two
  distinct factors pin ``G``; a single repeated factor pins ``G`` up to a
  shear whose parameter is an integer root of a polynomial.
* ``n == m``: degree-one classes ``v`` with ``v^{n+1} = 0`` are permuted up to
  sign; they are the rational roots of binary forms.  With no such class the
  search falls back to a bounded box.

:func:`box_search` is the brute-force oracle used to test this procedure.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from itertools import product
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from . import _linalg as la
from .chars import QuasitoricPair
from .ring import (Form, RingPresentation, form_mul, form_power, linear_form,
                   make_presentation)

Mat2 = Tuple[Tuple[int, int], Tuple[int, int]]


@dataclass(frozen=True, order=True)
class RingMap:
    """``φ(x1) = g11 x1 + g12 x2``, ``φ(x2) = g21 x1 + g22 x2``."""

    matrix: Mat2

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.matrix)
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError("a ring map is a 2x2 matrix")
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def of(cls, g11, g12, g21, g22) -> "RingMap":
        return cls(((g11, g12), (g21, g22)))

    @classmethod
    def identity(cls) -> "RingMap":
        return cls.of(1, 0, 0, 1)

    @property
    def det(self) -> int:
        (p, q), (r, s) = self.matrix
        return p * s - q * r

    def __matmul__(self, other: "RingMap") -> "RingMap":
        return RingMap(tuple(map(tuple, la.matmul(self.matrix, other.matrix))))

    def inverse(self) -> "RingMap":
        return RingMap(tuple(map(tuple, la.integer_inverse(self.matrix))))

    def image_of_linear(self, c1: int, c2: int) -> Tuple[int, int]:
        (p, q), (r, s) = self.matrix
        return (c1 * p + c2 * r, c1 * q + c2 * s)

    def apply_form(self, coeffs: Sequence[int]) -> Form:
        """Substitute the images of ``x1, x2`` into a binary form."""
        (p, q), (r, s) = self.matrix
        d = len(coeffs) - 1
        X1, X2 = linear_form(p, q), linear_form(r, s)
        out = [0] * (d + 1)
        for i, c in enumerate(coeffs):
            if c:
                term = form_mul(form_power(X1, i), form_power(X2, d - i))
                for k, t in enumerate(term):
                    out[k] += c * t
        return tuple(out)

    def to_json(self) -> list:
        return [list(r) for r in self.matrix]

    def __str__(self) -> str:
        (p, q), (r, s) = self.matrix
        return f"({p},{q};{r},{s})"


@dataclass(frozen=True)
class AutGroup:
    """Automorphisms of ``source``, sorted by matrix entries."""

    elements: Tuple[RingMap, ...]
    source: RingPresentation

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return _as_map(g) in self.elements

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def is_group(self) -> bool:
        s = set(self.elements)
        return (RingMap.identity() in s
                and all(x @ y in s for x in s for y in s)
                and all(x.inverse() in s for x in s))

    def to_json(self) -> list:
        return [g.to_json() for g in self.elements]


def _as_map(g) -> RingMap:
    return g if isinstance(g, RingMap) else RingMap(g)


def _sorted(maps: Iterable[RingMap]) -> List[RingMap]:
    return sorted(set(maps), key=lambda g: (g.matrix[0][0], g.matrix[0][1], g.matrix[1][0], g.matrix[1][1]))


# -- checks ---------------------------------------------------------------------

def relation_factors(pair: QuasitoricPair) -> Tuple[List[Tuple[int, int]], List[Tuple[int, int]]]:
    """Linear factors ``(c1, c2)`` of R1 and of R2."""
    f1 = [(1, 0)] + [(1, b) for b in pair.b]
    f2 = [(0, 1)] + [(a, 1) for a in pair.a]
    return f1, f2


def linear_factors(R: RingPresentation) -> List[Tuple[int, int]]:
    """Sorted multiset of the primitive linear factors of both relations.

    ``(c1, c2)`` stands for ``c1*x1 + c2*x2``; first nonzero entry positive.
    """
    f1, f2 = relation_factors(R.pair)
    return sorted(la.sign_normalized(f) for f in f1 + f2)


def _image_of_relation(G: RingMap, factors) -> Form:
    out: Form = (1,)
    for c1, c2 in factors:
        out = form_mul(out, linear_form(*G.image_of_linear(c1, c2)))
    return out


def is_homomorphism(G, source: RingPresentation, target: RingPresentation) -> bool:
    G = _as_map(G)
    for factors in relation_factors(source.pair):
        img = _image_of_relation(G, factors)
        d = len(img) - 1
        if d > target.top_degree:
            continue
        if any(target.reduce_form(img)):
            return False
    return True


def degree_matrix(G, source: RingPresentation, target: RingPresentation, d: int) -> la.Matrix:
    """Matrix of ``φ`` in degree ``d`` between Z-bases of the two graded pieces."""
    G = _as_map(G)
    L = la.transpose(source.cokernel_lift(d))
    cols = [target.cokernel_coordinates(G.apply_form(v)) for v in L]
    return la.transpose(cols) if cols and cols[0] else [[] for _ in cols]


def is_isomorphism(G, source: RingPresentation, target: RingPresentation) -> bool:
    G = _as_map(G)
    if abs(G.det) != 1 or source.top_degree != target.top_degree:
        return False
    if not is_homomorphism(G, source, target):
        return False
    for d in range(source.top_degree + 1):
        if len(source.basis(d)) != len(target.basis(d)):
            return False
        if abs(la.det(degree_matrix(G, source, target, d))) != 1:
            return False
    return True


# -- structural search --------------------------------------------------------------

def _small_relation_factors(pair: QuasitoricPair) -> List[Tuple[int, int]]:
    f1, f2 = relation_factors(pair)
    return f1 if pair.n < pair.m else f2


def _multiset(lines: Iterable[Tuple[int, int]]) -> dict:
    out = {}
    for v in lines:
        v = la.sign_normalized(v)
        out[v] = out.get(v, 0) + 1
    return out


def _completion(v: Tuple[int, int]) -> la.Matrix:
    """A unimodular matrix with first row ``v`` (``v`` primitive)."""
    c1, c2 = v
    # extended Euclid: x*c1 + y*c2 = 1, second row (-y, x) gives det 1
    old_r, r = c1, c2
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        qt = old_r // r
        old_r, r = r, old_r - qt * r
        old_s, s = s, old_s - qt * s
        old_t, t = t, old_t - qt * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    if old_r != 1:
        raise ValueError(f"{v} is not primitive")
    return [[c1, c2], [-old_t, old_s]]


def _pair_candidates(src_lines: dict, tgt_lines: dict) -> List[RingMap]:
    """Maps sending two distinct source lines onto target lines up to sign."""
    if sorted(src_lines.values()) != sorted(tgt_lines.values()):
        return []
    us = sorted(src_lines)
    u1, u2 = us[0], us[1]
    U = [list(u1), list(u2)]
    Uinv = la.rational_inverse(U)
    out = []
    for w1 in tgt_lines:
        if tgt_lines[w1] != src_lines[u1]:
            continue
        for w2 in tgt_lines:
            if w2 == w1 or tgt_lines[w2] != src_lines[u2]:
                continue
            if abs(la.det([list(w1), list(w2)])) != abs(la.det(U)):
                continue
            for e1, e2 in product((1, -1), repeat=2):
                W = [[e1 * x for x in w1], [e2 * x for x in w2]]
                G = la.matmul(Uinv, W)
                if all(x.denominator == 1 for row in G for x in row):
                    out.append(RingMap(tuple(tuple(int(x) for x in row) for row in G)))
    return out


def _integer_roots(coeffs: Sequence[int]) -> Optional[List[int]]:
    """Integer roots of ``sum c_k t^k``; None if the polynomial is zero."""
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    if not c:
        return None
    k = 0
    while c[k] == 0:
        k += 1
    roots = {0} if k else set()
    for dv in la.divisors(c[k]):
        for t in (dv, -dv):
            if sum(x * t ** i for i, x in enumerate(c)) == 0:
                roots.add(t)
    return sorted(roots)


def _relation_in_t(alpha_beta, factors) -> List[Form]:
    """``prod (α_f + t β_f)`` as a list of forms indexed by the power of ``t``."""
    out: List[Form] = [(1,)]
    for alpha, beta in (alpha_beta(c1, c2) for c1, c2 in factors):
        nxt = [form_mul(p, alpha) for p in out] + [None]
        for k, p in enumerate(out):
            q = form_mul(p, beta)
            nxt[k + 1] = q if nxt[k + 1] is None else tuple(x + y for x, y in zip(nxt[k + 1], q))
        out = nxt
    return out


def _shear_candidates(u, w, source: RingPresentation, target: RingPresentation) -> Iterator[RingMap]:
    """Maps with ``u @ G = ±w``; the free shear parameter is solved exactly.

    With ``G(t) = U^{-1} [e1 w; e2 w' + t w]`` the image of each relation is a
    polynomial in ``t`` with coefficients in the target ring; ``t`` must be a
    common integer root of its coordinates.
    """
    U = _completion(u)
    W = _completion(w)
    Uinv = la.integer_inverse(U)
    shift = la.matmul(Uinv, [[0, 0], list(W[0])])

    def G_of(e1, e2, A):
        M = [[e1 * W[0][0], e1 * W[0][1]],
             [e2 * W[1][0] + A * W[0][0], e2 * W[1][1] + A * W[0][1]]]
        return RingMap(tuple(map(tuple, la.matmul(Uinv, M))))

    (s11, s12), (s21, s22) = shift
    rels = relation_factors(source.pair)
    for e1, e2 in product((1, -1), repeat=2):
        (p, q), (r, s_) = G_of(e1, e2, 0).matrix

        def alpha_beta(c1, c2):
            return (linear_form(c1 * p + c2 * r, c1 * q + c2 * s_),
                    linear_form(c1 * s11 + c2 * s21, c1 * s12 + c2 * s22))

        roots = None
        for factors in rels:
            if len(factors) > target.top_degree:
                continue
            coeffs = [target.cokernel_coordinates(f) for f in _relation_in_t(alpha_beta, factors)]
            # one nonconstant coordinate bounds the candidates; survivors are verified later
            for k in range(len(coeffs[0])):
                rt = _integer_roots([c[k] for c in coeffs])
                if rt is not None:
                    roots = set(rt) if roots is None else roots & set(rt)
                    break
            if roots is not None and len(roots) <= 1:
                break
        if roots is None:
            raise RuntimeError(f"shear parameter unconstrained for {source.pair} -> {target.pair}")
        for A in sorted(roots):
            yield G_of(e1, e2, A)


def null_lines(R: RingPresentation) -> List[Tuple[int, int]]:
    """Primitive ``(c1, c2)`` with ``(c1 x1 + c2 x2)^{k} = 0``, ``k = min(n, m) + 1``.

    Each reduced coordinate of the power is a binary form in ``(c1, c2)``;
    the lines are their common rational roots.
    """
    cached = R._cache.get("null_lines")
    if cached is None:
        cached = R._cache["null_lines"] = _null_lines(R)
    return list(cached)


def _null_lines(R: RingPresentation) -> List[Tuple[int, int]]:
    k = min(R.n, R.m) + 1
    if k > R.top_degree:
        return []
    # coordinate r of (c1 x1 + c2 x2)^k is sum_i binom(k,i) P[r][i] c1^i c2^(k-i)
    P = R.cokernel_map(k)
    forms = [[comb(k, i) * P[r][i] for i in range(k + 1)] for r in range(len(P))]
    forms = [f for f in forms if any(f)]
    if not forms:
        raise RuntimeError("every degree-one class is nilpotent")
    f = forms[0]  # f[i] multiplies c1^i c2^(k-i)
    cands = set()
    if f[k] == 0:
        cands.add((1, 0))
    # c2 != 0: t = c1/c2 root of sum f[i] t^i
    lo = next(i for i in range(k + 1) if f[i])
    hi = max(i for i in range(k + 1) if f[i])
    if lo > 0:
        cands.add((0, 1))
    for p in la.divisors(f[lo]):
        for q in la.divisors(f[hi]):
            for sp in (p, -p):
                if sum(f[i] * sp ** i * q ** (k - i) for i in range(k + 1)) == 0:
                    cands.add(la.sign_normalized((sp, q)))
    out = []
    for c1, c2 in sorted(cands):
        if all(sum(g[i] * c1 ** i * c2 ** (k - i) for i in range(k + 1)) == 0 for g in forms):
            out.append((c1, c2))
    return out


def box_bound(*pairs: QuasitoricPair) -> int:
    ent = [abs(x) for p in pairs for x in p.a + p.b]
    return 2 * max(ent + [1]) + 2


def _candidates(source: RingPresentation, target: RingPresentation) -> Iterator[RingMap]:
    """Structural candidates; a superset of the isomorphisms."""
    if source.n == source.m:
        V, W = null_lines(source), null_lines(target)
        if len(V) != len(W):
            return
        if len(V) >= 2:
            yield from _pair_candidates(_multiset(V), _multiset(W))
        elif len(V) == 1:
            yield from _shear_candidates(V[0], W[0], source, target)
        else:
            yield from box_search(source, target, box_bound(source.pair, target.pair))
        return
    S = _multiset(_small_relation_factors(source.pair))
    T = _multiset(_small_relation_factors(target.pair))
    if sorted(S.values()) != sorted(T.values()):
        return
    if len(S) >= 2:
        yield from _pair_candidates(S, T)
    else:
        yield from _shear_candidates(next(iter(S)), next(iter(T)), source, target)


def _comparable(source: RingPresentation, target: RingPresentation) -> bool:
    return sorted((source.n, source.m)) == sorted((target.n, target.m))


def find_isomorphisms(source: RingPresentation, target: RingPresentation) -> List[RingMap]:
    """All isomorphisms ``source -> target``, sorted by entries."""
    if not _comparable(source, target):
        return []
    return _sorted(g for g in _candidates(source, target) if is_isomorphism(g, source, target))


def first_isomorphism(source: RingPresentation, target: RingPresentation) -> Optional[RingMap]:
    """Some isomorphism, or None; stops at the first verified candidate."""
    if not _comparable(source, target):
        return None
    return next((g for g in _candidates(source, target) if is_isomorphism(g, source, target)), None)


def are_isomorphic(source: RingPresentation, target: RingPresentation) -> bool:
    return first_isomorphism(source, target) is not None


def enumerate_automorphisms(R: RingPresentation) -> AutGroup:
    return AutGroup(tuple(find_isomorphisms(R, R)), R)


def conjugate(A: RingMap, iso: RingMap) -> RingMap:
    """The automorphism of the target corresponding to ``A`` under ``iso``."""
    return iso.inverse() @ A @ iso


# -- box search oracle -----------------------------------------------------------------

@lru_cache(maxsize=None)
def unimodular_box(B: int) -> np.ndarray:
    """All integer 2×2 matrices with entries in ``[-B, B]`` and determinant ±1, shape (k, 4)."""
    r = np.arange(-B, B + 1, dtype=np.int64)
    g = np.stack(np.meshgrid(r, r, r, r, indexing="ij"), axis=-1).reshape(-1, 4)
    det = g[:, 0] * g[:, 3] - g[:, 1] * g[:, 2]
    return g[np.abs(det) == 1]


def _batched_relation(G: np.ndarray, factors, dtype) -> np.ndarray:
    """Coefficients of the image of a product of linear factors, one row per map."""
    out = np.ones((len(G), 1), dtype=dtype)
    for c1, c2 in factors:
        # (c1, c2) @ G -> linear form (e1 x1 + e2 x2) stored as (e2, e1)
        e1 = c1 * G[:, 0] + c2 * G[:, 2]
        e2 = c1 * G[:, 1] + c2 * G[:, 3]
        nxt = np.zeros((len(G), out.shape[1] + 1), dtype=dtype)
        nxt[:, :-1] += out * e2[:, None]
        nxt[:, 1:] += out * e1[:, None]
        out = nxt
    return out


def box_search(source: RingPresentation, target: RingPresentation, B: int) -> List[RingMap]:
    """Every isomorphism with entries in ``[-B, B]``, by exhaustion."""
    G = unimodular_box(B)
    rels = relation_factors(source.pair)
    max_c = max(abs(x) for x in source.pair.a + source.pair.b + (1,))
    deg = max(len(f) for f in rels)
    p_norm = max((sum(abs(x) for x in row) for d in range(target.top_degree + 1)
                  for row in target.cokernel_map(d)), default=1)
    big = float(2 * B * max_c) ** deg * 2.0 ** deg * p_norm
    dtype = np.int64 if big < 2.0 ** 62 else object
    if dtype is object:
        G = G.astype(object)
    keep = np.ones(len(G), dtype=bool)
    for factors in rels:
        d = len(factors)
        if d > target.top_degree:
            continue
        img = _batched_relation(G, factors, dtype)
        P = target.cokernel_map(d)
        coords = img @ np.array(P, dtype=dtype).T
        keep &= ~np.any(coords != 0, axis=1)
    hits = [RingMap(((int(g[0]), int(g[1])), (int(g[2]), int(g[3])))) for g in G[keep]]
    return _sorted(g for g in hits if is_isomorphism(g, source, target))
