"""Homeomorphism normal forms and the smooth classification of projective bundles.

A pair with ``a = 0`` or ``b = 0`` is a two-stage generalized Bott (GB)
manifold; otherwise one vector has entries in ``{0, ±2}`` and the other in
``{0, ±1}``, and the manifold is homeomorphic to some ``M_{s,r}`` with
``s = (2,..,2,0,..)``, ``r = (1,..,1,0,..)``.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import List, Optional, Sequence, Tuple

from .chars import QuasitoricPair, ValidationError, validate_or_raise
from .maps import are_isomorphic
from .ring import make_presentation

GB = "GeneralizedBott"
NON_BOTT = "NonBott"

TAG_CP_CONJ = "M_{0,1} = CP^{m+1} # conj(CP^{m+1})"
TAG_CP_SAME = "M_{(2,0,...,0),1} = CP^{m+1} # CP^{m+1}"
TAG_WPS_CONJ = "M_{2,0} = CP^{n+1}_2 # conj(CP^{n+1}_2)"
TAG_WPS_SAME = "M_{2,(1,0,...,0)} = CP^{n+1}_2 # CP^{n+1}_2"


def is_generalized_bott(pair: QuasitoricPair) -> bool:
    validate_or_raise(pair)
    return not any(pair.a) or not any(pair.b)


# -- truncated polynomials in one variable ------------------------------------

def _truncated_product(factors: Sequence[int], n: int) -> List[int]:
    """Coefficients of ``prod (1 + c x)`` modulo ``x^{n+1}``."""
    p = [1] + [0] * n
    for c in factors:
        for k in range(n, 0, -1):
            p[k] += c * p[k - 1]
    return p


@dataclass(frozen=True)
class DiffeoWitness:
    epsilon: int
    w: int

    def to_json(self) -> dict:
        return {"epsilon": self.epsilon, "w": self.w}


def witness_holds(n: int, a: Sequence[int], a2: Sequence[int], eps: int, w: int) -> bool:
    """``(1 + eps w x) prod (1 + eps (a'_j + w) x) == prod (1 + a_j x)`` mod ``x^{n+1}``."""
    lhs = _truncated_product([eps * w] + [eps * (x + w) for x in a2], n)
    return lhs == _truncated_product(a, n)


def gb_diffeo(n: int, a: Sequence[int], a2: Sequence[int]) -> Optional[DiffeoWitness]:
    """Witness that ``P(C + sum γ^{a_j})`` and ``P(C + sum γ^{a'_j})`` over CP^n are diffeomorphic.

    ``w`` is pinned by the linear coefficient, ``eps((m+1) w + sum a') = sum a``,
    and the whole identity is then checked.
    """
    if len(a) != len(a2) or not a:
        raise ValidationError("vectors must have the same positive length")
    if n < 1:
        raise ValidationError("need n >= 1")
    m = len(a)
    for eps in (1, -1):
        num = eps * sum(a) - sum(a2)
        if num % (m + 1):
            continue
        w = num // (m + 1)
        if witness_holds(n, a, a2, eps, w):
            return DiffeoWitness(eps, w)
    return None


def are_diffeomorphic_gb(n: int, a: Sequence[int], a2: Sequence[int]) -> bool:
    return gb_diffeo(n, a, a2) is not None


def dual_twist_check(n: int, a: Sequence[int], A: int) -> bool:
    """``(1 - A x) prod (1 - (A + a_j) x) == prod (1 + a_j x)`` mod ``x^{n+1}``."""
    return _truncated_product([-A] + [-(A + x) for x in a], n) == _truncated_product(a, n)


# -- normal forms --------------------------------------------------------------

@dataclass(frozen=True)
class NormalForm:
    """Representative of a homeomorphism class.

    For ``GB`` the manifold is ``M_{vector, 0}`` over ``Δ^n × Δ^m`` (so the
    vector has length ``m``); for ``NON_BOTT`` it is ``M_{s,r}``.
    """

    kind: str
    n: int
    m: int
    vector: Tuple[int, ...] = ()
    s: Optional[int] = None
    r: Optional[int] = None
    homeo_tag: Optional[str] = None

    def __post_init__(self):
        if self.kind == NON_BOTT:
            if not (1 <= self.s <= (self.m + 1) // 2 and 1 <= self.r <= (self.n + 1) // 2):
                raise ValidationError(f"(s, r) = ({self.s}, {self.r}) out of range")
        elif self.kind != GB:
            raise ValidationError(f"unknown kind {self.kind!r}")

    def pair(self) -> QuasitoricPair:
        if self.kind == GB:
            return QuasitoricPair(self.n, self.m, self.vector, (0,) * self.n)
        return s_r_pair(self.n, self.m, self.s, self.r)

    def to_json(self) -> dict:
        return {
            "kind": self.kind, "n": self.n, "m": self.m,
            "vector": list(self.vector) if self.kind == GB else None,
            "s": self.s, "r": self.r, "homeo_tag": self.homeo_tag,
        }


def s_r_pair(n: int, m: int, s: int, r: int) -> QuasitoricPair:
    return QuasitoricPair(n, m, (2,) * s + (0,) * (m - s), (1,) * r + (0,) * (n - r))


def _gb_key(v: Tuple[int, ...]):
    # small entries first, then positive entries preferred
    return (max(map(abs, v), default=0), sum(map(abs, v)), tuple(-x for x in v))


def _orient_gb(pair: QuasitoricPair) -> QuasitoricPair:
    """Put the nonzero vector in ``a``; the trivial product gets ``n <= m``."""
    if any(pair.b) or (not any(pair.a) and pair.n > pair.m):
        return pair.swapped()
    return pair


@lru_cache(maxsize=None)
def _gb_canonical(n: int, a: Tuple[int, ...]) -> Tuple[int, ...]:
    bound = max(map(abs, a), default=0)
    values = sorted(range(-bound, bound + 1), key=lambda x: (x == 0, -x))
    best = None
    for v in combinations_with_replacement(values, len(a)):
        if (best is None or _gb_key(v) < _gb_key(best)) and gb_diffeo(n, a, v) is not None:
            best = v
    return best


def _orient_non_bott(pair: QuasitoricPair) -> QuasitoricPair:
    """Put the ``±2`` entries in ``a``."""
    return pair.swapped() if any(abs(x) == 2 for x in pair.b) else pair


def _plain_normal_form(pair: QuasitoricPair) -> NormalForm:
    if not any(pair.a) or not any(pair.b):
        p = _orient_gb(pair)
        return NormalForm(GB, p.n, p.m, vector=_gb_canonical(p.n, p.a))
    p = _orient_non_bott(pair)
    R = make_presentation(p)
    for s in range(1, (p.m + 1) // 2 + 1):
        for r in range(1, (p.n + 1) // 2 + 1):
            if are_isomorphic(make_presentation(s_r_pair(p.n, p.m, s, r)), R):
                return NormalForm(NON_BOTT, p.n, p.m, s=s, r=r)
    raise RuntimeError(f"no M_(s,r) representative found for {pair}")


def item_representatives(n: int, m: int) -> List[Tuple[str, QuasitoricPair]]:
    """Named representatives for a product with a one-dimensional factor, in item order."""
    out = []
    for nn, mm in dict.fromkeys([(n, m), (m, n)]):
        if nn == 1:
            out += [(TAG_CP_CONJ, QuasitoricPair(1, mm, (0,) * mm, (1,))),
                    (TAG_CP_SAME, QuasitoricPair(1, mm, (2,) + (0,) * (mm - 1), (1,)))]
    for nn, mm in dict.fromkeys([(n, m), (m, n)]):
        if mm == 1:
            out += [(TAG_WPS_CONJ, QuasitoricPair(nn, 1, (2,), (0,) * nn)),
                    (TAG_WPS_SAME, QuasitoricPair(nn, 1, (2,), (1,) + (0,) * (nn - 1)))]
    return out


def normal_form(pair: QuasitoricPair) -> NormalForm:
    """Canonical representative of the homeomorphism class of ``M_{a,b}``.

    When one factor is ``Δ^1`` the class is matched against the named
    representatives first, so the result carries their tag.
    """
    validate_or_raise(pair)
    if min(pair.n, pair.m) == 1:
        R = make_presentation(pair)
        for tag, rep in item_representatives(pair.n, pair.m):
            if are_isomorphic(make_presentation(rep), R):
                nf = _plain_normal_form(rep)
                return NormalForm(nf.kind, nf.n, nf.m, nf.vector, nf.s, nf.r, tag)
    return _plain_normal_form(pair)


def are_homeomorphic(p1: QuasitoricPair, p2: QuasitoricPair) -> bool:
    """Ring isomorphism of the integral cohomology (the classifying invariant)."""
    return are_isomorphic(make_presentation(p1), make_presentation(p2))
