"""Fans of weighted projective spaces and projective bundles, and related matrices.

``CP^{n+1}_a`` has rays ``v0 = -e_1 - ... - e_n - a e_{n+1}`` and ``e_1, ..., e_{n+1}``
with every proper subset spanning a cone.  ``P(C + γ^a)`` over ``CP^n`` adds
``-e_{n+1}``; it is the star subdivision of the singular cone
``{v0, e_1, ..., e_n}`` at ``-e_{n+1}``.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import FrozenSet, List, Optional, Sequence, Tuple

from . import _linalg as la
from .chars import CharMatrix, QuasitoricPair, ValidationError

Ray = Tuple[int, ...]


@dataclass(frozen=True, eq=False)
class Fan:
    """Rays and maximal cones (as sets of ray indices) in ``Z^rank``."""

    rank: int
    rays: Tuple[Ray, ...]
    max_cones: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        if any(len(r) != self.rank for r in rays):
            raise ValidationError("ray of the wrong length")
        for r in rays:
            if la.primitive(r) != r or not any(r):
                raise ValidationError(f"ray {r} is not primitive")
        cones = tuple(sorted(tuple(sorted(set(c))) for c in self.max_cones))
        if any(i < 0 or i >= len(rays) for c in cones for i in c):
            raise ValidationError("cone refers to a missing ray")
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", cones)

    def cone_rays(self, cone: Sequence[int]) -> List[Ray]:
        return [self.rays[i] for i in cone]

    def cone_set(self) -> FrozenSet[FrozenSet[Ray]]:
        """Maximal cones as sets of ray vectors; independent of ray indexing."""
        return frozenset(frozenset(self.cone_rays(c)) for c in self.max_cones)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Fan):
            return NotImplemented
        return self.rank == other.rank and self.cone_set() == other.cone_set()

    def __hash__(self) -> int:
        return hash((self.rank, self.cone_set()))

    def to_json(self) -> dict:
        return {"rank": self.rank, "rays": [list(r) for r in self.rays],
                "max_cones": [list(c) for c in self.max_cones]}


def _e(k: int, i: int, c: int = 1) -> Ray:
    return tuple(c if j == i else 0 for j in range(k))


def _v0(n: int, a: int) -> Ray:
    return (-1,) * n + (-a,)


def wps_fan(n: int, a: int) -> Fan:
    """Fan of ``CP^{n+1}_a``; rays ``[v0, e_1, ..., e_{n+1}]``."""
    if a <= 0:
        raise ValidationError(f"weight a must be positive, got {a}")
    if n < 1:
        raise ValidationError("need n >= 1")
    k = n + 1
    rays = [_v0(n, a)] + [_e(k, i) for i in range(k)]
    return Fan(k, tuple(rays), tuple(combinations(range(k + 1), k)))


def gb_fan(n: int, a: int) -> Fan:
    """Fan of ``P(C + γ^a)`` over ``CP^n``; rays ``[v0, -e_{n+1}, e_1, ..., e_{n+1}]``.

    Each maximal cone lifts a maximal cone of the fan of ``CP^n`` and adds
    ``e_{n+1}`` or ``-e_{n+1}``.
    """
    if n < 1:
        raise ValidationError("need n >= 1")
    k = n + 1
    rays = [_v0(n, a), _e(k, n, -1)] + [_e(k, i) for i in range(k)]
    # base rays (-1,..,-1), e_1..e_n lift to indices 0, 2..n+1
    lifted = [0] + list(range(2, n + 2))
    cones = []
    for base in combinations(lifted, n):
        for fibre in (n + 2, 1):
            cones.append(base + (fibre,))
    return Fan(k, tuple(rays), tuple(cones))


def blowup_identity(n: int, a: int) -> bool:
    """``-a e_{n+1} = v0 + e_1 + ... + e_n`` as lattice points."""
    k = n + 1
    lhs = _e(k, n, -a)
    rhs = [x + sum(_e(k, i)[j] for i in range(n)) for j, x in enumerate(_v0(n, a))]
    return list(lhs) == rhs


def _positive_combination(rays: Sequence[Ray], v: Sequence[int]) -> Optional[List[Fraction]]:
    """Coefficients of ``v`` on linearly independent ``rays``, or None."""
    A = la.transpose([list(r) for r in rays])
    return la.solve_rational(A, list(v))


def _as_indices(F: Fan, cone) -> Tuple[int, ...]:
    idx = []
    for r in cone:
        if isinstance(r, int):
            idx.append(r)
        else:
            r = tuple(r)
            if r not in F.rays:
                raise ValidationError(f"{r} is not a ray of the fan")
            idx.append(F.rays.index(r))
    return tuple(sorted(idx))


def star_subdivide(F: Fan, cone_rays, new_ray: Sequence[int]) -> Fan:
    """Star subdivision of ``F`` at ``new_ray`` in the relative interior of a cone.

    ``cone_rays`` lists the cone's rays as vectors or indices.  Every maximal
    cone containing it is replaced by the cones joining ``new_ray`` to the
    facets of that cone which omit one ray of ``cone_rays``.  The new ray is
    stored primitively and appended.

    Raises:
      ValidationError: ``new_ray`` is not in the relative interior of the cone.
    """
    tau = _as_indices(F, cone_rays)
    coeffs = _positive_combination(F.cone_rays(tau), new_ray)
    if coeffs is None or any(c <= 0 for c in coeffs):
        raise ValidationError(f"{tuple(new_ray)} is not in the relative interior of the cone")
    ray = la.primitive(new_ray)
    if ray in F.rays:
        raise ValidationError(f"{ray} is already a ray")
    k = len(F.rays)
    cones = []
    for c in F.max_cones:
        if set(tau) <= set(c):
            for rho in tau:
                cones.append(tuple(i for i in c if i != rho) + (k,))
        else:
            cones.append(c)
    return Fan(F.rank, F.rays + (ray,), tuple(cones))


def cone_determinant(F: Fan, cone: Sequence[int]) -> int:
    rays = F.cone_rays(cone)
    if len(rays) != F.rank:
        raise ValidationError(f"cone {tuple(cone)} is not full-dimensional simplicial")
    d = la.det(rays)
    if d == 0:
        raise ValidationError(f"cone {tuple(cone)} is not simplicial")
    return d


def singular_cones(F: Fan) -> List[Tuple[Tuple[Ray, ...], int]]:
    """Maximal cones with ``|det| != 1``, as ``(rays, |det|)`` in cone order."""
    out = []
    for c in F.max_cones:
        d = abs(cone_determinant(F, c))
        if d != 1:
            out.append((tuple(F.cone_rays(c)), d))
    return out


def is_smooth(F: Fan) -> Tuple[bool, Optional[Tuple[Ray, ...]], int]:
    """``(True, None, 1)`` or ``(False, first offending cone, |det|)``.

    Raises:
      ValidationError: a maximal cone is not simplicial.
    """
    bad = singular_cones(F)
    if not bad:
        return True, None, 1
    return False, bad[0][0], bad[0][1]


# -- rational characteristic matrices over a simplex ------------------------------

def lambda_a(n: int, a: int) -> la.Matrix:
    """``[v0 | I_{n+1}]``, the matrix of ``CP^{n+1}_a`` (columns ``F_0..F_{n+1}``)."""
    k = n + 1
    return [[_v0(n, a)[i]] + [int(i == j) for j in range(k)] for i in range(k)]


def is_rational_char_matrix(M) -> bool:
    """Every ``n+1`` of the ``n+2`` columns are linearly independent."""
    rows = la.as_matrix(M)
    k = len(rows)
    if any(len(r) != k + 1 for r in rows):
        return False
    return all(la.det(la.columns(rows, [c for c in range(k + 1) if c != skip])) != 0
               for skip in range(k + 1))


@dataclass(frozen=True)
class WpsWitness:
    """``G · M · diag(signs) == lambda_a(n, a)``, first sign ``+1``."""

    a: int
    G: Tuple[Tuple[int, ...], ...]
    signs: Tuple[int, ...]

    def to_json(self) -> dict:
        return {"a": self.a, "G": [list(r) for r in self.G], "signs": list(self.signs)}


def wps_witness(M) -> Optional[WpsWitness]:
    """Row operations and column signs taking ``M`` to ``Λ_a``, if any.

    Columns ``1..n+1`` must be unimodular; after inverting them, column 0 must
    read ``(±1, ..., ±1, ±a)``.  Row signs then fix column 0 and column signs
    restore the identity.
    """
    rows = la.as_matrix(M)
    k = len(rows)
    if k < 2 or any(len(r) != k + 1 for r in rows):
        raise ValidationError("expected an (n+1) x (n+2) matrix")
    B = la.columns(rows, range(1, k + 1))
    if abs(la.det(B)) != 1:
        return None
    Binv = la.integer_inverse(B)
    y = la.matvec(Binv, [r[0] for r in rows])
    if any(abs(x) != 1 for x in y[:-1]) or y[-1] == 0:
        return None
    sigma = [-1 if x > 0 else 1 for x in y]
    G = [[sigma[i] * x for x in Binv[i]] for i in range(k)]
    signs = (1,) + tuple(sigma)
    return WpsWitness(abs(y[-1]), tuple(map(tuple, G)), signs)


def recognize_wps(M) -> Optional[int]:
    w = wps_witness(M)
    return None if w is None else w.a


def lambda_tilde(n: int, r: int) -> la.Matrix:
    """Matrix of the second summand when ``M_{2,r}`` is cut into two simplices."""
    if not 0 <= r <= n:
        raise ValidationError("need 0 <= r <= n")
    rows = []
    for i in range(n):
        rows.append([-1] + [int(i == j) for j in range(n)] + [-1 if i < r else 0])
    rows.append([-2] + [0] * n + [-1])
    return rows


def lambda_tilde_factorization(n: int, r: int) -> Tuple[la.Matrix, la.Matrix, la.Matrix, Tuple[int, ...]]:
    """``(A, X, D, S)`` with ``lambda_tilde = A X`` and ``X = D Λ_2 diag(S)``.

    ``A`` is the identity with last column ``(1 x r, 0, ..., 0, 1)``; ``D``
    flips the sign of the first ``r`` rows.
    """
    k = n + 1
    A = [[int(i == j) for j in range(n)] + [1 if i < r else 0] for i in range(n)]
    A.append([0] * n + [1])
    X = ([[1] + [int(i == j) for j in range(n)] + [0] for i in range(r)]
         + [[-1] + [int(i == j) for j in range(n)] + [0] for i in range(r, n)]
         + [[-2] + [0] * n + [-1]])
    D = [[(-1 if i < r else 1) * int(i == j) for j in range(k)] for i in range(k)]
    S = (1,) + (-1,) * r + (1,) * (n - r) + (-1,)
    return A, X, D, S


def connected_sum_char_matrix(n: int, a: int, orientation: str) -> CharMatrix:
    """Characteristic matrix of ``CP^{n+1}_a # CP^{n+1}_a`` over ``Δ^n × Δ^1``.

    ``opposite``: ``[I_{n+1} | v0 | e_{n+1}]``.  ``same``: the last column is
    ``(2/a, 0, ..., 0, 1)``, which is allowed only for ``a`` in ``{1, 2}``.
    Columns follow the facet order ``F_1..F_n, F'_1, F_{n+1}, F'_2``.
    """
    if orientation not in ("same", "opposite"):
        raise ValidationError(f"orientation must be 'same' or 'opposite', got {orientation!r}")
    if a < 1:
        raise ValidationError(f"weight a must be positive, got {a}")
    if orientation == "same" and a not in (1, 2):
        raise ValidationError("same-orientation sum is only smooth for a in {1, 2}")
    k = n + 1
    last = _e(k, n) if orientation == "opposite" else (2 // a,) + (0,) * (n - 1) + (1,)
    rows = [[int(i == j) for j in range(k)] + [_v0(n, a)[i], last[i]] for i in range(k)]
    return CharMatrix(tuple(map(tuple, rows)), n, 1)


def connected_sum_pair(n: int, a: int, orientation: str) -> QuasitoricPair:
    """The pair ``M_{a,0}`` or ``M_{a,(2/a,0,...,0)}`` over ``Δ^n × Δ^1``."""
    connected_sum_char_matrix(n, a, orientation)
    b = (0,) * n if orientation == "opposite" else (2 // a,) + (0,) * (n - 1)
    return QuasitoricPair(n, 1, (a,), b)


def lens_cohomology(n: int, a: int) -> List[str]:
    """``H^i(S^{2n+1}/μ_a)`` for ``i = 0..2n+1``."""
    if a < 1:
        raise ValidationError(f"a must be positive, got {a}")
    out = []
    for i in range(2 * n + 2):
        if i in (0, 2 * n + 1):
            out.append("Z")
        elif i % 2 == 0 and a > 1:
            out.append(f"Z_{a}")
        else:
            out.append("0")
    return out
