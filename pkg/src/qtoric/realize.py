"""Realizing cohomology automorphisms by explicit self-maps.

A :class:`SphereMap` of ``S^{2n+1} × S^{2m+1}`` permutes coordinates within each
sphere and conjugates some of them:  new coordinate ``k`` is old coordinate
``perm[k]``, conjugated when ``conj[k]``.  If it carries ``K_{a,b}``-orbits to
orbits, there is ``θ`` in ``GL(2, Z)`` with ``θ · wt(k) = ±wt(perm[k])`` for every
coordinate, and the induced map on ``H^2`` is ``θ^T`` in the ``(x1, x2)`` basis.

Composition of words: the word ``w1 w2 ...`` stands for ``w1 ∘ w2 ∘ ...`` and
induces the matrix product ``G_{w1} G_{w2} ...``.
"""

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from . import _linalg as la
from .chars import (CharEquivWitness, KActionWeights, QuasitoricPair, ValidationError, canonical_char_matrix,
                    k_action_weights, validate_or_raise)
from .classify import dual_twist_check, is_generalized_bott
from .maps import RingMap, are_isomorphic, enumerate_automorphisms, find_isomorphisms, is_isomorphism
from .ring import make_presentation

MAX_WORD = 4
SWAP = RingMap.of(0, 1, 1, 0)


@dataclass(frozen=True)
class SphereMap:
    """0-based permutations and conjugation flags of the ``w`` and ``z`` coordinates."""

    perm_w: Tuple[int, ...]
    perm_z: Tuple[int, ...]
    conj_w: Tuple[bool, ...]
    conj_z: Tuple[bool, ...]

    def __post_init__(self):
        for p, c in ((self.perm_w, self.conj_w), (self.perm_z, self.conj_z)):
            if sorted(p) != list(range(len(p))):
                raise ValidationError(f"{p} is not a permutation")
            if len(c) != len(p):
                raise ValidationError("conjugation flags of the wrong length")
        object.__setattr__(self, "conj_w", tuple(bool(x) for x in self.conj_w))
        object.__setattr__(self, "conj_z", tuple(bool(x) for x in self.conj_z))

    @property
    def n(self) -> int:
        return len(self.perm_w) - 1

    @property
    def m(self) -> int:
        return len(self.perm_z) - 1

    @classmethod
    def identity(cls, n: int, m: int) -> "SphereMap":
        return cls(tuple(range(n + 1)), tuple(range(m + 1)), (False,) * (n + 1), (False,) * (m + 1))

    def perm(self) -> List[int]:
        """Permutation of all ``n + m + 2`` coordinates, ``w`` block first."""
        k = self.n + 1
        return list(self.perm_w) + [k + j for j in self.perm_z]

    def conj(self) -> List[bool]:
        return list(self.conj_w) + list(self.conj_z)

    def compose(self, other: "SphereMap") -> "SphereMap":
        """``self ∘ other``."""
        def part(p1, c1, p2, c2):
            return tuple(p2[p1[k]] for k in range(len(p1))), tuple(c1[k] != c2[p1[k]] for k in range(len(p1)))
        pw, cw = part(self.perm_w, self.conj_w, other.perm_w, other.conj_w)
        pz, cz = part(self.perm_z, self.conj_z, other.perm_z, other.conj_z)
        return SphereMap(pw, pz, cw, cz)

    def inverse(self) -> "SphereMap":
        def part(p, c):
            inv = [0] * len(p)
            for k, j in enumerate(p):
                inv[j] = k
            return tuple(inv), tuple(c[inv[j]] for j in range(len(p)))
        pw, cw = part(self.perm_w, self.conj_w)
        pz, cz = part(self.perm_z, self.conj_z)
        return SphereMap(pw, pz, cw, cz)

    def swap_factors(self) -> "SphereMap":
        """The same map with the two spheres listed in the other order."""
        return SphereMap(self.perm_z, self.perm_w, self.conj_z, self.conj_w)

    def to_json(self) -> dict:
        return {"perm_w": [p + 1 for p in self.perm_w], "perm_z": [p + 1 for p in self.perm_z],
                "conj_w": list(self.conj_w), "conj_z": list(self.conj_z)}


@dataclass(frozen=True)
class InducedWitness:
    theta: Tuple[Tuple[int, int], Tuple[int, int]]
    induced: RingMap

    def to_json(self) -> dict:
        return {"theta": [list(r) for r in self.theta], "induced": self.induced.to_json()}


# -- standard maps ----------------------------------------------------------------

def s_r_shape(pair: QuasitoricPair) -> Optional[Tuple[int, int]]:
    """``(s, r)`` if ``a = (2,..,2,0,..,0)`` and ``b = (1,..,1,0,..,0)``, both nonzero."""
    s = sum(1 for x in pair.a if x == 2)
    r = sum(1 for x in pair.b if x == 1)
    if s and r and pair.a == (2,) * s + (0,) * (pair.m - s) and pair.b == (1,) * r + (0,) * (pair.n - r):
        return s, r
    return None


def standard_map(kind: str, pair: QuasitoricPair) -> SphereMap:
    """The map ``f``, ``g`` or ``h`` for ``M_{s,r}``.

    ``f`` conjugates every coordinate.  ``g`` (needs ``s = (m+1)/2``) conjugates
    ``w_{r+1..n+1}`` and rotates ``z`` by ``s``.  ``h`` (needs ``r = (n+1)/2``)
    rotates ``w`` by ``r`` and conjugates ``z_{s+1..m+1}``.
    """
    n, m = pair.n, pair.m
    ident_w, ident_z = tuple(range(n + 1)), tuple(range(m + 1))
    if kind == "f":
        return SphereMap(ident_w, ident_z, (True,) * (n + 1), (True,) * (m + 1))
    if kind not in ("g", "h"):
        raise ValidationError(f"unknown standard map {kind!r}")
    shape = s_r_shape(pair)
    if shape is None:
        raise ValidationError(f"{pair} is not of the form M_(s,r)")
    s, r = shape
    if kind == "g":
        if 2 * s != m + 1:
            raise ValidationError(f"g needs m odd and s = (m+1)/2; got m={m}, s={s}")
        return SphereMap(ident_w, tuple((k + s) % (m + 1) for k in range(m + 1)),
                         tuple(k >= r for k in range(n + 1)), (False,) * (m + 1))
    if 2 * r != n + 1:
        raise ValidationError(f"h needs n odd and r = (n+1)/2; got n={n}, r={r}")
    return SphereMap(tuple((k + r) % (n + 1) for k in range(n + 1)), ident_z,
                     (False,) * (n + 1), tuple(k >= s for k in range(m + 1)))


# -- orbit preservation -------------------------------------------------------------

def orbit_theta(F: SphereMap, source: KActionWeights, target: KActionWeights):
    """``θ`` with ``θ · wt_target(k) = ±wt_source(perm[k])``, or None.

    This is the condition ``F(t · x) = θ^T(t) · F(x)`` with ``t`` acting by
    ``source`` on the left and by ``target`` on the right.
    """
    if (F.n, F.m) != (source.n, source.m) or (F.n, F.m) != (target.n, target.m):
        raise ValidationError("map and weights over different spheres")
    ws, wt = source.columns(), target.columns()
    perm, conj = F.perm(), F.conj()
    A = [list(wt[k]) for k in range(len(perm))]
    theta = []
    for row in range(2):
        rhs = [(-1 if conj[k] else 1) * ws[perm[k]][row] for k in range(len(perm))]
        sol = la.solve_rational(A, rhs)
        if sol is None or any(x.denominator != 1 for x in sol):
            return None
        theta.append(tuple(int(x) for x in sol))
    if abs(la.det(theta)) != 1:
        return None
    return tuple(theta)


def preserves_orbits(F: SphereMap, weights: KActionWeights) -> Optional[InducedWitness]:
    theta = orbit_theta(F, weights, weights)
    if theta is None:
        return None
    return InducedWitness(theta, RingMap(tuple(zip(*theta))))


def facet_classes(pair: QuasitoricPair) -> List[Tuple[int, int]]:
    """Degree-two class ``(c1, c2) = c1 x1 + c2 x2`` of each coordinate divisor, ``w`` block first.

    Read off the characteristic matrix: its first ``n+m`` columns are the
    identity, so each of those facets is minus the combination of the last two.
    """
    M = canonical_char_matrix(pair).rows
    n, m = pair.n, pair.m
    l = n + m
    cls = [(-M[k][l], -M[k][l + 1]) for k in range(l)]
    return cls[:n] + [(1, 0)] + cls[n:] + [(0, 1)]


def equivalence_isomorphism(p1: QuasitoricPair, p2: QuasitoricPair, witness: CharEquivWitness) -> RingMap:
    """Ring isomorphism ``H^*(p2) -> H^*(p1)`` induced by an equivalence of characteristic matrices.

    ``witness`` carries the canonical matrix of ``p1`` to that of ``p2``; the
    class of facet ``k`` of ``p2`` goes to ``±`` the class of facet ``perm[k]``.
    """
    def column_classes(p):
        c = facet_classes(p)
        return c[:p.n] + c[p.n + 1:p.n + 1 + p.m] + [(1, 0), (0, 1)]
    c1, c2 = column_classes(p1), column_classes(p2)
    l = p1.n + p1.m

    def image(k):
        s, j = witness.signs[witness.perm[k]], witness.perm[k]
        return (s * c1[j][0], s * c1[j][1])
    G = RingMap((image(l), image(l + 1)))
    if any(G.image_of_linear(*c2[k]) != image(k) for k in range(l + 2)):
        raise RuntimeError("equivalence does not act on facet classes")
    if not is_isomorphism(G, make_presentation(p2), make_presentation(p1)):
        raise RuntimeError("equivalence does not induce a ring isomorphism")
    return G


def _sign_normal(c: Tuple[int, int]) -> Tuple[int, int]:
    return c if c > (0, 0) else (-c[0], -c[1])


def equivalence_by_classes(p1: QuasitoricPair, p2: QuasitoricPair) -> Optional[RingMap]:
    """An isomorphism ``H^2(p2) -> H^2(p1)`` carrying facet classes to facet classes, or None.

    Facets go block to block (or across, when ``n = m``) and classes match up
    to sign.  The characteristic matrix rows span the saturated lattice of
    relations among the facet classes, so such a map exists exactly when the
    two canonical matrices are equivalent.  The images of ``x1`` and ``x2``
    must themselves be signed facet classes, which bounds the search.
    """
    if (p1.n, p1.m) != (p2.n, p2.m):
        return None
    n = p1.n
    c1, c2 = facet_classes(p1), facet_classes(p2)
    blocks1 = (c1[:n + 1], c1[n + 1:])
    blocks2 = (c2[:n + 1], c2[n + 1:])
    orders = [(0, 1)] + ([(1, 0)] if p1.n == p1.m else [])
    for bw, bz in orders:
        for u, v in product(blocks1[bw], blocks1[bz]):
            for su, sv in product((1, -1), repeat=2):
                G = RingMap(((su * u[0], su * u[1]), (sv * v[0], sv * v[1])))
                if abs(G.det) != 1:
                    continue
                if all(sorted(_sign_normal(G.image_of_linear(*c)) for c in blocks2[k]) ==
                       sorted(_sign_normal(c) for c in blocks1[(bw, bz)[k]]) for k in (0, 1)):
                    if not is_isomorphism(G, make_presentation(p2), make_presentation(p1)):
                        raise RuntimeError("facet-class map is not a ring isomorphism")
                    return G
    return None


def induced_matrix(F: SphereMap, pair: QuasitoricPair) -> RingMap:
    """Matrix of the induced automorphism of ``H^*(M_{a,b})``.

    Computed as ``θ^T`` and checked against the facet classes: the pullback
    of the divisor of coordinate ``k`` is ``±`` the divisor of ``perm[k]``.

    Raises:
      ValidationError: ``F`` does not preserve the orbits.
    """
    validate_or_raise(pair)
    wit = preserves_orbits(F, k_action_weights(pair))
    if wit is None:
        raise ValidationError(f"map does not preserve the orbits of {pair}")
    G = wit.induced
    classes, perm, conj = facet_classes(pair), F.perm(), F.conj()
    for k, c in enumerate(classes):
        img = G.image_of_linear(*c)
        want = classes[perm[k]]
        if conj[k]:
            want = (-want[0], -want[1])
        if img != want:
            raise RuntimeError(f"facet route disagrees with θ for {pair}")
    return G


# -- generators -----------------------------------------------------------------

@dataclass(frozen=True)
class Generator:
    name: str
    matrix: RingMap
    sphere_map: Optional[SphereMap] = None


def _frame(pair: QuasitoricPair) -> Optional[Tuple[SphereMap, QuasitoricPair, RingMap]]:
    """A map carrying ``K_{a,b}``-orbits to those of a sorted nonnegative pair.

    Supports are moved to the front, entries replaced by their absolute
    values, and a common sign absorbed by conjugations.  Also returns the
    induced isomorphism ``H^*(std) -> H^*(pair)``.  None when the nonzero
    entries of a vector have mixed signs.
    """
    n, m = pair.n, pair.m
    S = [j for j in range(m) if pair.a[j]]
    T = [i for i in range(n) if pair.b[i]]
    std = QuasitoricPair(n, m, tuple(abs(pair.a[j]) for j in S) + (0,) * (m - len(S)),
                         tuple(abs(pair.b[i]) for i in T) + (0,) * (n - len(T)))
    pw = tuple(T + [i for i in range(n) if i not in T] + [n])
    pz = tuple(S + [j for j in range(m) if j not in S] + [m])
    src, tgt = k_action_weights(pair), k_action_weights(std)
    for cw, cz in product((False, True), repeat=2):
        F = SphereMap(pw, pz, (cw,) * (n + 1), (cz,) * (m + 1))
        theta = orbit_theta(F, src, tgt)
        if theta is not None:
            return F, std, RingMap(tuple(zip(*theta)))
    return None


def connected_sum_shape(pair: QuasitoricPair) -> Optional[Tuple[int, str]]:
    """``(a, orientation)`` if the pair is ``M_{a,0}`` or ``M_{a,(2/a,0,..)}`` over ``Δ^n × Δ^1`` with ``a`` in ``{1, 2}``."""
    if pair.m != 1 or pair.a[0] not in (1, 2):
        return None
    a = pair.a[0]
    if not any(pair.b):
        return a, "opposite"
    if pair.b == (2 // a,) + (0,) * (pair.n - 1):
        return a, "same"
    return None


def _type_matrices(std: QuasitoricPair) -> List[Tuple[str, RingMap]]:
    a, _ = connected_sum_shape(std)
    out = [("Type1", RingMap.of(-1, 0, 0, -1))]
    if std.n % 2 == 1:
        out.append(("Type2", RingMap.of(-1, -2 // a, 0, 1)))
    out.append(("Type3", RingMap.of(-1, 0, a, 1)))
    return out


def _gb_matrices(q: QuasitoricPair) -> List[Tuple[str, RingMap]]:
    """Conjugation and the dual-twist bundle map ``x2 -> -x2 + A x1``."""
    out = [("conj", RingMap.of(-1, 0, 0, -1))]
    num = -2 * sum(q.a)
    if any(q.a) and num % (q.m + 1) == 0 and dual_twist_check(q.n, q.a, num // (q.m + 1)):
        A = num // (q.m + 1)
        out.append((f"dual_twist({A})", RingMap.of(1, 0, A, -1)))
    return out


def _connected_sum_matrices(pair: QuasitoricPair) -> List[Tuple[str, RingMap]]:
    """Involution types, moved to ``pair`` from a connected-sum shape in the orientation with ``m = 1``.

    The sorting frame is tried first; otherwise an equivalence of
    characteristic matrices with one of the four connected-sum shapes, found
    through the facet classes.
    """
    for swapped, q in ((False, pair), (True, pair.swapped())):
        if q.m != 1:
            continue
        framed = _frame(q)
        if framed is not None and connected_sum_shape(framed[1]) is not None:
            std, theta = framed[1], framed[2]
        else:
            std = theta = None
            for a, orient in product((1, 2), ("opposite", "same")):
                cand = QuasitoricPair(q.n, 1, (a,), (0,) * q.n if orient == "opposite" else (2 // a,) + (0,) * (q.n - 1))
                # equivalent matrices have isomorphic rings; the ring test is cheap
                if not are_isomorphic(make_presentation(cand), make_presentation(q)):
                    continue
                iso = equivalence_by_classes(cand, q)
                if iso is not None:
                    std, theta = cand, iso.inverse()
                    break
            if std is None:
                continue
        mats = [(name, theta.inverse() @ T @ theta) for name, T in _type_matrices(std)]
        return [(name, SWAP @ G @ SWAP) for name, G in mats] if swapped else mats
    return []


@lru_cache(maxsize=4096)
def generators(pair: QuasitoricPair) -> Tuple[Generator, ...]:
    """Generators whose words realize automorphisms of ``H^*(M_{a,b})``.

    Non-Bott pairs use the sphere maps f, g, h.  Pairs whose sorted form is a
    connected sum of weighted projective spaces with ``a`` in ``{1, 2}`` also
    get the three involution types.  Generalized Bott pairs get conjugation
    and, when it exists, the dual twist.  Everything is moved to ``pair``
    through the sorting frame and checked to be a ring automorphism.
    """
    validate_or_raise(pair)
    gb = is_generalized_bott(pair)
    swapped = any(pair.b) if gb else any(abs(x) == 2 for x in pair.b)
    q = pair.swapped() if swapped else pair
    framed = _frame(q)
    if framed is None and not gb:
        raise RuntimeError(f"no frame for {pair}")
    frame, std, _ = framed or (None, None, None)
    spheres, mats = [], []
    if not gb:
        s, r = s_r_shape(std)
        kinds = ["f"] + (["g"] if 2 * s == q.m + 1 else []) + (["h"] if 2 * r == q.n + 1 else [])
        for kind in kinds:
            # a self-map of std moved back to q: frame^{-1} ∘ F ∘ frame
            F = frame.inverse().compose(standard_map(kind, std)).compose(frame)
            spheres.append((kind, F.swap_factors() if swapped else F))
    if gb:
        mats += _gb_matrices(q)
    if swapped:
        mats = [(name, SWAP @ G @ SWAP) for name, G in mats]
    gens = [Generator(name, induced_matrix(F, pair), F) for name, F in spheres]
    gens += [Generator(name, G) for name, G in _connected_sum_matrices(pair) + mats]
    R = make_presentation(pair)
    return tuple(g for g in gens if is_isomorphism(g.matrix, R, R))


# -- words ----------------------------------------------------------------------

@dataclass(frozen=True)
class Realization:
    word: Tuple[str, ...]
    matrix: RingMap
    sphere_map: Optional[SphereMap] = None
    theta: Optional[Tuple[Tuple[int, int], Tuple[int, int]]] = None

    def to_json(self) -> dict:
        return {"word": list(self.word), "matrix": self.matrix.to_json(),
                "theta": None if self.theta is None else [list(r) for r in self.theta],
                "sphere_map": None if self.sphere_map is None else self.sphere_map.to_json()}


def word_table(pair: QuasitoricPair, max_len: int = MAX_WORD) -> Dict[RingMap, Tuple[str, ...]]:
    """Shortest (then lexicographically first) word for each reachable matrix."""
    gens = generators(pair)
    table = {RingMap.identity(): ()}
    frontier = deque([((), RingMap.identity())])
    while frontier:
        word, G = frontier.popleft()
        if len(word) == max_len:
            continue
        for g in gens:
            H = G @ g.matrix
            if H not in table:
                table[H] = word + (g.name,)
                frontier.append((word + (g.name,), H))
    return table


def _word_sphere_map(pair: QuasitoricPair, word: Sequence[str]) -> Optional[SphereMap]:
    maps = {g.name: g.sphere_map for g in generators(pair)}
    F = SphereMap.identity(pair.n, pair.m)
    for name in word:
        if maps[name] is None:
            return None
        F = F.compose(maps[name])
    return F


def realize_automorphism(pair: QuasitoricPair, target) -> Optional[Realization]:
    """A word of length at most 4 whose induced matrix is ``target``, or None.

    Raises:
      ValidationError: ``target`` is not an automorphism of the ring.
    """
    target = target if isinstance(target, RingMap) else RingMap(target)
    R = make_presentation(pair)
    if not is_isomorphism(target, R, R):
        raise ValidationError(f"{target} is not an automorphism of H*({pair})")
    word = word_table(pair).get(target)
    if word is None:
        return None
    F = _word_sphere_map(pair, word)
    if F is not None:
        if induced_matrix(F, pair) != target:
            raise RuntimeError("word product and induced matrix disagree")
        theta = preserves_orbits(F, k_action_weights(pair)).theta
        return Realization(word, target, F, theta)
    return Realization(word, target)


# -- planning -------------------------------------------------------------------

@dataclass(frozen=True)
class Plan:
    """``iso = automorphism @ reference``: realize the automorphism, then the reference."""

    reference: RingMap
    automorphism: RingMap
    realization: Optional[Realization]

    def to_json(self) -> dict:
        return {"reference_iso": self.reference.to_json(),
                "automorphism": self.automorphism.to_json(),
                "realization": None if self.realization is None else self.realization.to_json()}


def reference_isomorphism(p1: QuasitoricPair, p2: QuasitoricPair) -> Optional[RingMap]:
    """A fixed isomorphism standing for the classification homeomorphism."""
    R1, R2 = make_presentation(p1), make_presentation(p2)
    if is_isomorphism(RingMap.identity(), R1, R2):
        return RingMap.identity()
    isos = find_isomorphisms(R1, R2)
    return isos[0] if isos else None


def plan_realization(p1: QuasitoricPair, p2: QuasitoricPair, iso) -> Plan:
    """Split ``iso`` into a self-map of ``p1`` followed by the reference homeomorphism.

    Raises:
      ValidationError: ``iso`` is not an isomorphism ``H^*(p1) -> H^*(p2)``.
    """
    iso = iso if isinstance(iso, RingMap) else RingMap(iso)
    R1, R2 = make_presentation(p1), make_presentation(p2)
    if not is_isomorphism(iso, R1, R2):
        raise ValidationError(f"{iso} is not an isomorphism H*({p1}) -> H*({p2})")
    ref = reference_isomorphism(p1, p2)
    A = iso @ ref.inverse()
    if A @ ref != iso or A not in enumerate_automorphisms(R1):
        raise RuntimeError("plan does not factor the isomorphism")
    return Plan(ref, A, realize_automorphism(p1, A))
