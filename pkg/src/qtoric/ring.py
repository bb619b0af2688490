"""Graded cohomology rings ``Z[x1, x2] / <R1, R2>`` of the manifolds M_{a,b}.

A homogeneous form of degree ``d`` in ``x1, x2`` is stored as a tuple of
``d + 1`` integers; entry ``i`` is the coefficient of ``x1^i x2^(d-i)``.
Degrees are counted in generators (``x1`` and ``x2`` have degree 1); the
topological degree is twice that.

Normal forms are computed degree by degree.  In degree ``d <= n + m`` the
monomial multiples of ``R1`` and ``R2`` are as many as the non-canonical
monomials (``x1`` exponent above ``n`` or ``x2`` exponent above ``m``) and span
a saturated lattice.  Reduction is modulo its Hermite basis with pivots taken on
non-canonical monomials first.  For most pairs the pivots are all 1 and the
canonical monomials ``x1^i x2^j`` (``i <= n``, ``j <= m``) form a Z-basis.  For
some pairs with both ``a`` and ``b`` nonzero they only span a sublattice of
finite index (for ``M_{(2,2),(1,1)}``, ``x1^2 x2^2`` is three times a generator of
the top degree), and a non-canonical monomial survives with a small
coefficient.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, List, Sequence, Tuple

from . import _linalg as la
from .chars import QuasitoricPair, ValidationError, validate_or_raise

Form = Tuple[int, ...]


# -- binary forms -----------------------------------------------------------

def form_mul(p: Sequence[int], q: Sequence[int]) -> Form:
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                out[i + j] += x * y
    return tuple(out)


def linear_form(c1: int, c2: int) -> Form:
    """The form ``c1*x1 + c2*x2``."""
    return (c2, c1)


def product_of_linear(factors: Iterable[Tuple[int, int]]) -> Form:
    out: Form = (1,)
    for c1, c2 in factors:
        out = form_mul(out, linear_form(c1, c2))
    return out


def form_power(p: Sequence[int], k: int) -> Form:
    out: Form = (1,)
    for _ in range(k):
        out = form_mul(out, p)
    return out


def monomial(i: int, j: int) -> Form:
    return tuple(int(k == i) for k in range(i + j + 1))


# -- ring elements ----------------------------------------------------------

@dataclass(frozen=True)
class RingElement:
    """Homogeneous element; ``coeffs[i]`` multiplies ``x1^i x2^(degree-i)``."""

    degree: int
    coeffs: Form

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("negative degree")
        if len(self.coeffs) != self.degree + 1:
            raise ValueError(f"degree {self.degree} element needs {self.degree + 1} coefficients")

    @classmethod
    def from_terms(cls, degree: int, terms: Dict[Tuple[int, int], int]) -> "RingElement":
        coeffs = [0] * (degree + 1)
        for (i, j), c in terms.items():
            if i + j != degree:
                raise ValueError(f"monomial x1^{i} x2^{j} is not of degree {degree}")
            coeffs[i] += c
        return cls(degree, tuple(coeffs))

    @classmethod
    def monomial(cls, i: int, j: int, c: int = 1) -> "RingElement":
        return cls.from_terms(i + j, {(i, j): c})

    @classmethod
    def zero(cls, degree: int) -> "RingElement":
        return cls(degree, (0,) * (degree + 1))

    def terms(self) -> Dict[Tuple[int, int], int]:
        return {(i, self.degree - i): c for i, c in enumerate(self.coeffs) if c}

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "RingElement") -> "RingElement":
        if self.degree != other.degree:
            raise ValueError("adding elements of different degrees")
        return RingElement(self.degree, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "RingElement":
        return RingElement(self.degree, tuple(-x for x in self.coeffs))

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def scale(self, c: int) -> "RingElement":
        return RingElement(self.degree, tuple(c * x for x in self.coeffs))

    def to_json(self) -> dict:
        # topological degree on the wire; terms sorted by (i, j)
        terms = sorted(self.terms().items())
        return {"degree": 2 * self.degree,
                "terms": [{"i": i, "j": j, "c": c} for (i, j), c in terms]}

    @classmethod
    def from_json(cls, doc: dict) -> "RingElement":
        if doc["degree"] % 2:
            raise ValueError("odd topological degree")
        d = doc["degree"] // 2
        return cls.from_terms(d, {(t["i"], t["j"]): t["c"] for t in doc["terms"]})

    def __str__(self) -> str:
        parts = []
        for (i, j), c in sorted(self.terms().items(), reverse=True):
            mono = "*".join(s for s in (
                f"x1^{i}" if i > 1 else ("x1" if i == 1 else ""),
                f"x2^{j}" if j > 1 else ("x2" if j == 1 else "")) if s)
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else "-" + mono if c == -1 else f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


# -- presentations ----------------------------------------------------------

@dataclass(frozen=True)
class RingPresentation:
    """``H^*(M_{a,b}) = Z[x1,x2] / <x1 prod(x1 + b_i x2), x2 prod(a_j x1 + x2)>``."""

    pair: QuasitoricPair
    relation1: RingElement
    relation2: RingElement
    _cache: Dict[tuple, object] = field(default_factory=dict, repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.pair.n

    @property
    def m(self) -> int:
        return self.pair.m

    @property
    def top_degree(self) -> int:
        return self.pair.n + self.pair.m

    def basis(self, d: int) -> List[Tuple[int, int]]:
        """Canonical monomials ``(i, j)`` of degree ``d``, lexicographic."""
        return [(i, d - i) for i in range(d + 1) if i <= self.n and d - i <= self.m]

    def bases(self) -> Dict[int, List[Tuple[int, int]]]:
        return {d: self.basis(d) for d in range(self.top_degree + 1)}

    def relation_multiples(self, d: int) -> List[Form]:
        """All monomial multiples of R1 and R2 of degree ``d``."""
        cols = []
        for rel in (self.relation1, self.relation2):
            k = d - rel.degree
            if k < 0:
                continue
            for i in range(k + 1):
                cols.append(form_mul(monomial(i, k - i), rel.coeffs))
        return cols

    def _row_order(self, d: int) -> List[int]:
        canon = {i for i, _ in self.basis(d)}
        return [i for i in range(d + 1) if i not in canon] + sorted(canon)

    def relation_lattice(self, d: int) -> List[Tuple[int, int, List[int]]]:
        """Hermite basis ``[(row, pivot, vector), ...]`` of the degree-``d`` relations.

        Rows are visited non-canonical monomials first, so when the canonical
        monomials form a Z-basis every pivot is 1 and sits on a non-canonical
        monomial.  Entries above each pivot are reduced into ``[0, pivot)``.
        """
        key = ("hnf", d)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        rest = [list(c) for c in self.relation_multiples(d)]
        basis = []
        for r in self._row_order(d):
            live = [v for v in rest if v[r]]
            rest = [v for v in rest if not v[r]]
            while len(live) > 1:
                live.sort(key=lambda v: abs(v[r]))
                p = live[0]
                nxt = [p]
                for v in live[1:]:
                    q = v[r] // p[r]
                    v = [x - q * y for x, y in zip(v, p)]
                    (nxt if v[r] else rest).append(v)
                live = nxt
            if live:
                v = live[0]
                if v[r] < 0:
                    v = [-x for x in v]
                basis.append((r, v[r], v))
        for t, (r, piv, h) in enumerate(basis):
            for s in range(t):
                rs, ps, hs = basis[s]
                q = hs[r] // piv
                if q:
                    basis[s] = (rs, ps, [x - q * y for x, y in zip(hs, h)])
        self._cache[key] = basis
        return basis

    def is_integral_basis(self, d: int) -> bool:
        """Whether the canonical monomials of degree ``d`` form a Z-basis."""
        canon = {i for i, _ in self.basis(d)}
        if d > self.top_degree:
            return not canon
        return all(piv == 1 and r not in canon for r, piv, _ in self.relation_lattice(d))

    def reduce_form(self, coeffs: Sequence[int]) -> Form:
        d = len(coeffs) - 1
        if d > self.top_degree:
            return (0,) * (d + 1)
        v = list(coeffs)
        for r, piv, h in self.relation_lattice(d):
            q = v[r] // piv
            if q:
                v = [x - q * y for x, y in zip(v, h)]
        return tuple(v)

    def _snf(self, d: int):
        key = ("snf", d)
        cached = self._cache.get(key)
        if cached is None:
            cols = self.relation_multiples(d)
            if cols:
                A = [[col[i] for col in cols] for i in range(d + 1)]
                U, D, _ = la.smith_normal_form(A)
                r = sum(1 for i in range(min(len(D), len(cols))) if D[i][i])
                if any(D[i][i] != 1 for i in range(r)):
                    raise ValueError(f"torsion in degree {d} of {self.pair}")
            else:
                U, r = la.identity(d + 1), 0
            Uinv = la.integer_inverse(U)
            cached = (U[r:], [row[r:] for row in Uinv])
            self._cache[key] = cached
        return cached

    def cokernel_map(self, d: int) -> la.Matrix:
        """Integer ``Q`` with kernel the degree-``d`` relations and ``Q`` onto ``Z^rank``."""
        return self._snf(d)[0]

    def cokernel_lift(self, d: int) -> la.Matrix:
        """Integer ``L`` with ``cokernel_map(d) @ L = I``."""
        return self._snf(d)[1]

    def cokernel_coordinates(self, coeffs: Sequence[int]) -> List[int]:
        """Coordinates of the class of a form in a Z-basis of its degree."""
        return la.matvec(self.cokernel_map(len(coeffs) - 1), coeffs)

    def coordinates(self, e: RingElement) -> List[int]:
        """Coefficients of ``e`` on the canonical monomials of its degree.

        Raises:
          ValueError: if the canonical monomials are not a Z-basis in this degree.
        """
        if e.degree > self.top_degree:
            return []
        if not self.is_integral_basis(e.degree):
            raise ValueError(f"canonical monomials are not a Z-basis in degree {e.degree} of {self.pair}")
        v = self.reduce_form(e.coeffs)
        return [v[i] for i, _ in self.basis(e.degree)]

    def element(self, d: int, coords: Sequence[int]) -> RingElement:
        coeffs = [0] * (d + 1)
        for (i, _), c in zip(self.basis(d), coords):
            coeffs[i] = c
        return RingElement(d, tuple(coeffs))


@lru_cache(maxsize=4096)
def make_presentation(pair: QuasitoricPair) -> RingPresentation:
    """Expanded relations of ``H^*(M_{a,b})``.

    Raises:
      ValidationError: if ``1 - a_j b_i`` is not a unit for some ``(i, j)``.
    """
    validate_or_raise(pair)
    r1 = product_of_linear([(1, 0)] + [(1, b) for b in pair.b])
    r2 = product_of_linear([(0, 1)] + [(a, 1) for a in pair.a])
    return RingPresentation(pair, RingElement(pair.n + 1, r1), RingElement(pair.m + 1, r2))


def reduce(e: RingElement, R: RingPresentation) -> RingElement:
    """Unique representative of the class of ``e``.

    Canonical monomials only, whenever they form a Z-basis in that degree;
    otherwise a non-canonical monomial may survive with a coefficient in
    ``[0, pivot)``.  Degrees above ``n + m`` reduce to zero.
    """
    return RingElement(e.degree, R.reduce_form(e.coeffs))


def multiply(e1: RingElement, e2: RingElement, R: RingPresentation) -> RingElement:
    prod = RingElement(e1.degree + e2.degree, form_mul(e1.coeffs, e2.coeffs))
    return reduce(prod, R)


def power(e: RingElement, k: int, R: RingPresentation) -> RingElement:
    return reduce(RingElement(e.degree * k, form_power(e.coeffs, k)), R)


def rank_of_degree(R: RingPresentation, d: int) -> Tuple[int, List[int]]:
    """Free rank and torsion of the degree-``d`` part, via Smith normal form.

    Uses every monomial of degree ``d`` and every monomial multiple of the
    relations; no truncation of exponents.
    """
    if d < 0:
        raise ValueError("negative degree")
    cols = R.relation_multiples(d)
    A = [[col[i] for col in cols] for i in range(d + 1)]
    return la.cokernel(A, rows=d + 1)


def total_rank(R: RingPresentation) -> int:
    total = 0
    for d in range(R.top_degree + 2):
        rk, torsion = rank_of_degree(R, d)
        if torsion:
            raise ValueError(f"torsion {torsion} in degree {d}")
        total += rk
    return total


def oracle_coordinates(R: RingPresentation, e: RingElement) -> List[int]:
    """Canonical-monomial coordinates of ``e`` from the Smith normal form.

    Independent of the Hermite reduction: the cokernel map comes from the SNF
    row transform, and the canonical monomials are expressed in it.

    Raises:
      ValueError: if the canonical monomials are not a Z-basis in this degree.
    """
    d = e.degree
    if d > R.top_degree:
        return []
    cols = R.relation_multiples(d)
    A = [[col[i] for col in cols] for i in range(d + 1)]
    if cols:
        U, D, _ = la.smith_normal_form(A)
        r = sum(1 for i in range(min(len(D), len(cols))) if D[i][i])
        if any(D[i][i] != 1 for i in range(r)):
            raise ValueError(f"torsion in degree {d}")
        Q = U[r:]
    else:
        Q = la.identity(d + 1)
    QB = [[row[i] for i, _ in R.basis(d)] for row in Q]
    return la.matvec(la.integer_inverse(QB), la.matvec(Q, e.coeffs))


def oracle_reduce(R: RingPresentation, e: RingElement) -> RingElement:
    if e.degree > R.top_degree:
        return RingElement.zero(e.degree)
    return R.element(e.degree, oracle_coordinates(R, e))


def binomial_power_form(c1: int, c2: int, k: int) -> Form:
    """``(c1 x1 + c2 x2)^k`` without repeated multiplication."""
    return tuple(comb(k, i) * c1 ** i * c2 ** (k - i) for i in range(k + 1))
