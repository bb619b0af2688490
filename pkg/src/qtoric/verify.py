"""Invariant suite over a bounded corpus.

Each check returns a :class:`CheckResult`; ``run_all`` is what the ``verify``
subcommand prints.  The defaults are the desk-scale sizes; the CLI passes
smaller ones.
"""

import random
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Callable, Dict, List, Optional

from . import _linalg as la
from .chars import QuasitoricPair, canonical_char_matrix, char_equiv, enumerate_pairs, k_action_weights
from .classify import (TAG_CP_CONJ, TAG_CP_SAME, TAG_WPS_CONJ, TAG_WPS_SAME, are_homeomorphic,
                       gb_diffeo, is_generalized_bott, item_representatives, normal_form, s_r_pair)
from .fans import (connected_sum_char_matrix, connected_sum_pair, gb_fan, is_smooth, lambda_a, singular_cones, lambda_tilde,
                   lambda_tilde_factorization, lens_cohomology, recognize_wps, star_subdivide, wps_fan, wps_witness)
from .maps import RingMap, are_isomorphic, enumerate_automorphisms
from .realize import induced_matrix, preserves_orbits, realize_automorphism, standard_map, word_table
from .ring import RingElement, form_mul, make_presentation, rank_of_degree


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: Dict = field(default_factory=dict)

    def line(self) -> str:
        extra = ", ".join(f"{k}={v}" for k, v in self.detail.items())
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}" + (f" ({extra})" if extra else "")

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def corpus(max_dim: int, bound: int) -> List[QuasitoricPair]:
    """All valid pairs with ``n + m <= max_dim`` and entries in ``[-bound, bound]``."""
    return [p for n in range(1, max_dim) for m in range(1, max_dim - n + 1) for p in enumerate_pairs(n, m, bound)]


def _m(*rows) -> RingMap:
    return RingMap(tuple(tuple(r) for r in rows))


# -- checks -----------------------------------------------------------------------

def check_free_module(max_dim: int = 6, bound: int = 2) -> CheckResult:
    bad, pairs = [], corpus(max_dim, bound)
    for p in pairs:
        R = make_presentation(p)
        for d in range(p.n + p.m + 2):
            want = sum(1 for i in range(p.n + 1) if 0 <= d - i <= p.m)
            if rank_of_degree(R, d) != (want, []):
                bad.append(str(p))
                break
    return CheckResult("free module ranks", not bad, {"pairs": len(pairs), "failures": len(bad)})


I, NEG = _m((1, 0), (0, 1)), _m((-1, 0), (0, -1))
WITH_G = {I, NEG, _m((1, 0), (-2, -1)), _m((-1, 0), (2, 1))}
WITH_H = {I, NEG, _m((-1, -1), (0, 1)), _m((1, 1), (0, -1))}


def connected_sum_listed(n: int, a: int) -> set:
    """Automorphisms listed for the connected sums of ``CP^{n+1}_a``, ``a`` in ``{1, 2}``."""
    out = {I, NEG, _m((1, 0), (-a, -1)), _m((-1, 0), (a, 1))}
    if n % 2:
        out |= {_m((1, 2 // a), (0, -1)), _m((-1, -2 // a), (0, 1))}
    return out


def case_listed(n: int, m: int, s: int, r: int) -> set:
    out = {I, NEG}
    if 2 * s == m + 1:
        out |= WITH_G
    if 2 * r == n + 1:
        out |= WITH_H
    return out


def check_aut_tables() -> CheckResult:
    """Exact lists where they are complete; containment plus the order otherwise."""
    ok, orders = True, {}
    for n in (2, 3, 4, 5):
        for a in (1, 2):
            for orient in ("opposite", "same"):
                p = connected_sum_pair(n, a, orient)
                got = set(enumerate_automorphisms(make_presentation(p)))
                listed = connected_sum_listed(n, a)
                ok &= (got == listed) if n % 2 == 0 else listed <= got
                if n % 2:
                    orders[f"sum n={n} a={a} {orient}"] = len(got)
    for (n, m, s, r), exact in [((2, 2, 1, 1), True), ((2, 3, 2, 1), True), ((3, 2, 1, 2), True),
                                ((4, 4, 1, 1), True), ((3, 3, 2, 2), False), ((3, 5, 3, 2), False)]:
        got = set(enumerate_automorphisms(make_presentation(s_r_pair(n, m, s, r))))
        listed = case_listed(n, m, s, r)
        ok &= (got == listed) if exact else listed <= got
        if not exact:
            orders[f"g and h n={n} m={m}"] = len(got)
    return CheckResult("automorphism tables", ok, orders)


def check_gb_criterion(max_n: int = 3, max_m: int = 3, bound: int = 3) -> CheckResult:
    """Witness exists iff the rings are isomorphic; vectors up to permutation."""
    bad = checked = 0
    for n in range(1, max_n + 1):
        for m in range(1, max_m + 1):
            vecs = list(combinations_with_replacement(range(-bound, bound + 1), m))
            rings = [make_presentation(QuasitoricPair(n, m, v, (0,) * n)) for v in vecs]
            for i, v in enumerate(vecs):
                for j, u in enumerate(vecs):
                    checked += 1
                    bad += (gb_diffeo(n, v, u) is not None) != are_isomorphic(rings[i], rings[j])
    hirz = all((gb_diffeo(1, (x,), (y,)) is not None) == ((x - y) % 2 == 0)
               for x in range(-bound, bound + 1) for y in range(-bound, bound + 1))
    return CheckResult("generalized Bott criterion", bad == 0 and hirz,
                       {"pairs": checked, "failures": bad, "hirzebruch": hirz})


def allowed_tags(p: QuasitoricPair) -> set:
    """Tags the classification permits for a non-Bott pair with a one-dimensional factor."""
    q = p.swapped() if any(abs(x) == 2 for x in p.b) else p
    tags = set()
    if q.n == 1:
        tags |= {TAG_CP_CONJ} if q.m % 2 == 0 else {TAG_CP_CONJ, TAG_CP_SAME}
    if q.m == 1:
        tags |= {TAG_WPS_CONJ} if q.n % 2 == 0 else {TAG_WPS_CONJ, TAG_WPS_SAME}
    return tags


def check_classification(max_dim: int = 5, bound: int = 2) -> CheckResult:
    pairs = corpus(max_dim, bound)
    classes = defaultdict(list)
    for p in pairs:
        classes[normal_form(p)].append(p)
    split = sum(1 for ps in classes.values() for q in ps[1:] if not are_homeomorphic(ps[0], q))
    reps = [ps[0] for ps in classes.values()]
    merged = sum(1 for i in range(len(reps)) for j in range(i + 1, len(reps))
                 if reps[i].n + reps[i].m == reps[j].n + reps[j].m and are_homeomorphic(reps[i], reps[j]))
    bad_tags = 0
    for nf, ps in classes.items():
        for p in ps:
            if min(p.n, p.m) != 1 or is_generalized_bott(p):
                continue
            reps_by_tag = dict(item_representatives(p.n, p.m))
            if nf.homeo_tag not in allowed_tags(p) or not are_homeomorphic(p, reps_by_tag[nf.homeo_tag]):
                bad_tags += 1
    return CheckResult("homeomorphism classification", split == merged == bad_tags == 0,
                       {"pairs": len(pairs), "classes": len(classes), "split": split,
                        "merged": merged, "bad_tags": bad_tags})


def check_blowup(max_n: int = 3, max_a: int = 5) -> CheckResult:
    ok = True
    for n in range(1, max_n + 1):
        for a in range(1, max_a + 1):
            F = wps_fan(n, a)
            # the cone missing e_{n+1}; singular exactly when a >= 2
            cone = [F.rays[0]] + [F.rays[i] for i in range(1, n + 1)]
            smooth, bad, det = is_smooth(F)
            if a >= 2:
                ok &= not smooth and det == a and set(bad) == set(cone)
                ok &= len(singular_cones(F)) == 1
            else:
                ok &= smooth
            e = [0] * (n + 1)
            e[n] = -1
            ok &= star_subdivide(F, cone, e) == gb_fan(n, a)
    return CheckResult("blow-up of the singular cone", ok)


def check_connected_sums(max_n: int = 4) -> CheckResult:
    ok = True
    for n in range(1, max_n + 1):
        for a in (1, 2):
            for orient in ("opposite", "same"):
                M = connected_sum_char_matrix(n, a, orient)
                target = canonical_char_matrix(connected_sum_pair(n, a, orient))
                ok &= char_equiv(M, target, n, 1) is not None
        for r in range(1, n + 1):
            A, X, D, S = lambda_tilde_factorization(n, r)
            ok &= la.matmul(A, X) == lambda_tilde(n, r)
            ok &= X == la.matmul(la.matmul(D, lambda_a(n, 2)), [[int(i == j) * S[i] for j in range(len(S))]
                                                                   for i in range(len(S))])
            ok &= recognize_wps(lambda_tilde(n, r)) == 2 and wps_witness(lambda_tilde(n, r)) is not None
    return CheckResult("connected-sum characteristic matrices", ok)


def check_realization(max_dim: int = 5, bound: int = 2) -> CheckResult:
    """Listed automorphisms are realized by short words; ``f`` always gives ``θ = -I``."""
    missed = checked = 0
    for p in corpus(max_dim, bound):
        if is_generalized_bott(p):
            continue
        checked += 1
        if preserves_orbits(standard_map("f", p), k_action_weights(p)).theta != ((-1, 0), (0, -1)):
            missed += 1
            continue
        q = p.swapped() if any(abs(x) == 2 for x in p.b) else p
        s, r = sum(1 for x in q.a if x), sum(1 for x in q.b if x)
        listed = case_listed(q.n, q.m, s, r)
        if q.m == 1 and q.a[0] in (1, 2):
            listed |= connected_sum_listed(q.n, q.a[0])
        if q is not p:
            listed = {_m((0, 1), (1, 0)) @ G @ _m((0, 1), (1, 0)) for G in listed}
        for G in enumerate_automorphisms(make_presentation(p)):
            if G not in listed:
                continue
            R = realize_automorphism(p, G)
            if R is None or len(R.word) > 4 or (R.sphere_map is not None and induced_matrix(R.sphere_map, p) != G):
                missed += 1
    return CheckResult("realization of listed automorphisms", missed == 0, {"pairs": checked, "failures": missed})


def lens_expected(n: int, a: int) -> List[str]:
    """``Z`` in degrees 0 and 2n+1, ``Z_a`` in even degrees 2..2n, zero elsewhere (``Z_1`` is ``0``)."""
    out = []
    for k in range(2 * n + 2):
        if k in (0, 2 * n + 1):
            out.append("Z")
        elif k % 2 == 0:
            out.append(f"Z_{a}" if a > 1 else "0")
        else:
            out.append("0")
    return out


def check_lens(max_n: int = 4, max_a: int = 6) -> CheckResult:
    bad = [(n, a) for n in range(1, max_n + 1) for a in range(1, max_a + 1) if lens_cohomology(n, a) != lens_expected(n, a)]
    return CheckResult("lens space cohomology", not bad, {"failures": len(bad)})


def check_reduction_oracle(samples: int = 8, products: int = 10000, max_dim: int = 5, bound: int = 2,
                           seed: int = 0) -> CheckResult:
    """Hermite reduction against the Smith-form cokernel map on random products."""
    rng = random.Random(seed)
    pairs = corpus(max_dim, bound)
    picked = rng.sample(pairs, min(samples, len(pairs)))
    bad = 0
    for p in picked:
        R = make_presentation(p)
        top = p.n + p.m
        inv = {}
        for _ in range(products):
            d1 = rng.randint(0, top)
            d2 = rng.randint(0, top + 1 - d1)
            e1 = [rng.randint(-5, 5) for _ in range(d1 + 1)]
            e2 = [rng.randint(-5, 5) for _ in range(d2 + 1)]
            prod = form_mul(e1, e2)
            d = len(prod) - 1
            red = R.reduce_form(prod)
            if d > top:
                bad += any(red)
                continue
            if R.cokernel_coordinates(prod) != R.cokernel_coordinates(red):
                bad += 1
                continue
            if R.is_integral_basis(d):
                if d not in inv:
                    Q = R.cokernel_map(d)
                    inv[d] = la.integer_inverse([[row[i] for i, _ in R.basis(d)] for row in Q])
                coords = la.matvec(inv[d], R.cokernel_coordinates(prod))
                bad += red != R.element(d, coords).coeffs
    return CheckResult("reduction agrees with Smith-form oracle", bad == 0,
                       {"rings": len(picked), "products": len(picked) * products, "failures": bad})


CHECKS: Dict[str, Callable[..., CheckResult]] = {
    "free_module": check_free_module,
    "aut_tables": check_aut_tables,
    "gb_criterion": check_gb_criterion,
    "classification": check_classification,
    "blowup": check_blowup,
    "connected_sums": check_connected_sums,
    "realization": check_realization,
    "lens": check_lens,
    "reduction_oracle": check_reduction_oracle,
}


def run_all(max_dim: int = 4, bound: int = 2, products: int = 1000) -> List[CheckResult]:
    """Every check at a reduced size suitable for the command line."""
    small = min(max_dim, 5)
    return [
        check_free_module(max_dim, bound),
        check_aut_tables(),
        check_gb_criterion(min(max_dim - 1, 3), min(max_dim - 1, 3), bound),
        check_classification(small, bound),
        check_blowup(),
        check_connected_sums(min(max_dim, 4)),
        check_realization(small, bound),
        check_lens(),
        check_reduction_oracle(products=products, max_dim=small, bound=bound),
    ]
