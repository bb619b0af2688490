"""Command-line front end.  Every subcommand prints one JSON document.

Exit codes: 0 success, 2 invalid input (JSON ``{"error": ...}``), 1 internal
failure or a failed ``verify`` check.
"""

import argparse
import json
import sys
import traceback
from importlib import resources
from pathlib import Path
from typing import List, Optional, Sequence

from .chars import QuasitoricPair, ValidationError, enumerate_pairs, validate_or_raise
from .classify import gb_diffeo, normal_form
from .fans import Fan, gb_fan, is_smooth, singular_cones, star_subdivide, wps_fan
from .maps import RingMap, enumerate_automorphisms, find_isomorphisms
from .realize import plan_realization, realize_automorphism
from .ring import make_presentation, rank_of_degree
from . import verify

DEFAULT_BOUND = 3


def load_schema(name: str) -> dict:
    """JSON schema shipped for the output of ``name`` (a subcommand, ``plan``, ``fan-smooth``, ``error``...)."""
    return json.loads(resources.files("qtoric").joinpath("schemas", f"{name}.json").read_text())


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_vector(text: str, length: Optional[int] = None, name: str = "vector") -> tuple:
    try:
        v = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValidationError(f"{name} must be comma-separated integers, got {text!r}")
    if length is not None and len(v) != length:
        raise ValidationError(f"{name} must have {length} entries, got {len(v)}")
    return v


def parse_matrix(text: str) -> RingMap:
    try:
        rows = json.loads(text)
        return RingMap(rows)
    except (ValueError, TypeError) as exc:
        raise ValidationError(f"matrix must be a JSON 2x2 array, got {text!r}: {exc}")


def _pair(n, m, a, b) -> QuasitoricPair:
    if None in (n, m, a, b):
        raise ValidationError("need --n, --m, --a and --b")
    p = QuasitoricPair(n, m, parse_vector(a, m, "a"), parse_vector(b, n, "b"))
    validate_or_raise(p)
    return p


def _add_pair(sp, suffix: str = "", required: bool = True):
    for flag, kind in (("n", int), ("m", int), ("a", str), ("b", str)):
        sp.add_argument(f"--{flag}{suffix}", type=kind, required=required)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qtoric", description=__doc__)
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="entry bound for searches and corpora")
    # --bound is accepted before or after the subcommand
    common = _Parser(add_help=False)
    common.add_argument("--bound", type=int, default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    sp = sub.add_parser("enumerate", parents=[common], help="valid pairs with entries in [-bound, bound]")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--canonical", action="store_true", help="one pair per sorted shape")

    sp = sub.add_parser("cohomology", parents=[common], help="ranks, torsion and canonical monomials")
    _add_pair(sp)
    sp.add_argument("--degree", type=int, help="topological degree")

    sp = sub.add_parser("aut", parents=[common], help="graded ring automorphisms")
    _add_pair(sp)

    sp = sub.add_parser("iso", parents=[common], help="graded ring isomorphisms between two pairs")
    _add_pair(sp)
    _add_pair(sp, "2")

    sp = sub.add_parser("classify", parents=[common], help="homeomorphism normal form")
    _add_pair(sp)

    sp = sub.add_parser("diffeo-gb", parents=[common], help="diffeomorphism of projective bundles over CP^n")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--a", required=True)
    sp.add_argument("--aprime", required=True)

    sp = sub.add_parser("fan", parents=[common], help="weighted projective fans, blow-up and smoothness")
    sp.add_argument("action", choices=("wps", "gb", "blowup", "smooth"))
    sp.add_argument("--n", type=int)
    sp.add_argument("--a", type=int)
    sp.add_argument("--file", help="fan JSON for 'smooth'")

    sp = sub.add_parser("realize", parents=[common], help="word realizing an automorphism, or a plan for an isomorphism")
    _add_pair(sp)
    sp.add_argument("--target", help="automorphism as a JSON 2x2 array")
    _add_pair(sp, "2", required=False)
    sp.add_argument("--iso", help="isomorphism to the second pair as a JSON 2x2 array")

    sp = sub.add_parser("verify", parents=[common], help="run the invariant suite on a small corpus")
    sp.add_argument("--max-dim", type=int, default=4, help="largest n + m in the corpus")
    sp.add_argument("--products", type=int, default=1000, help="random products per sampled ring")
    return p


# -- commands ---------------------------------------------------------------------

def cmd_enumerate(args):
    pairs = enumerate_pairs(args.n, args.m, args.bound, canonical=args.canonical)
    return {"n": args.n, "m": args.m, "bound": args.bound, "count": len(pairs), "pairs": [p.to_json() for p in pairs]}


def _degree_doc(R, k):
    # internal degree k is topological degree 2k
    rank, torsion = rank_of_degree(R, k)
    return {"degree": 2 * k, "rank": rank, "torsion": torsion, "basis": [list(t) for t in R.basis(k)]}


def cmd_cohomology(args):
    p = _pair(args.n, args.m, args.a, args.b)
    R = make_presentation(p)
    if args.degree is not None:
        if args.degree < 0:
            raise ValidationError("degree must be nonnegative")
        if args.degree % 2:
            return {"pair": p.to_json(), "degree": args.degree, "rank": 0, "torsion": [], "basis": []}
        return dict(pair=p.to_json(), **_degree_doc(R, args.degree // 2))
    return {"pair": p.to_json(), "relations": [R.relation1.to_json(), R.relation2.to_json()],
            "degrees": [_degree_doc(R, k) for k in range(p.n + p.m + 1)]}


def cmd_aut(args):
    return enumerate_automorphisms(make_presentation(_pair(args.n, args.m, args.a, args.b))).to_json()


def cmd_iso(args):
    p1 = _pair(args.n, args.m, args.a, args.b)
    p2 = _pair(args.n2, args.m2, args.a2, args.b2)
    isos = find_isomorphisms(make_presentation(p1), make_presentation(p2))
    return {"isomorphic": bool(isos), "isomorphisms": [g.to_json() for g in isos]}


def cmd_classify(args):
    return normal_form(_pair(args.n, args.m, args.a, args.b)).to_json()


def cmd_diffeo_gb(args):
    a = parse_vector(args.a, name="a")
    a2 = parse_vector(args.aprime, len(a), "aprime")
    wit = gb_diffeo(args.n, a, a2)
    if wit is None:
        return {"diffeomorphic": False, "epsilon": None, "w": None}
    return {"diffeomorphic": True, **wit.to_json()}


def _load_fan(path: str) -> Fan:
    try:
        doc = json.loads(Path(path).read_text())
        return Fan(int(doc["rank"]), tuple(tuple(r) for r in doc["rays"]), tuple(tuple(c) for c in doc["max_cones"]))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise ValidationError(f"cannot read fan from {path}: {exc}")


def _smooth_doc(F: Fan):
    smooth, cone, det = is_smooth(F)
    return {"smooth": smooth, "singular_cone": None if cone is None else [list(r) for r in cone],
            "det": det, "singular_count": len(singular_cones(F))}


def cmd_fan(args):
    if args.action == "smooth" and args.file:
        return _smooth_doc(_load_fan(args.file))
    if args.n is None or args.a is None:
        raise ValidationError("need --n and --a (or --file for 'smooth')")
    if args.action == "wps":
        return wps_fan(args.n, args.a).to_json()
    if args.action == "gb":
        return gb_fan(args.n, args.a).to_json()
    if args.action == "smooth":
        return _smooth_doc(wps_fan(args.n, args.a))
    F = wps_fan(args.n, args.a)
    cone = [F.rays[i] for i in range(args.n + 1)]
    new = tuple(-int(i == args.n) for i in range(args.n + 1))
    B = star_subdivide(F, cone, new)
    return {"fan": B.to_json(), "equals_gb_fan": B == gb_fan(args.n, args.a), "smooth": is_smooth(B)[0]}


def cmd_realize(args):
    p1 = _pair(args.n, args.m, args.a, args.b)
    if args.iso is not None:
        p2 = _pair(args.n2, args.m2, args.a2, args.b2)
        return plan_realization(p1, p2, parse_matrix(args.iso)).to_json()
    if args.target is None:
        raise ValidationError("need --target, or --iso with a second pair")
    r = realize_automorphism(p1, parse_matrix(args.target))
    if r is None:
        return {"word": None, "matrix": parse_matrix(args.target).to_json(), "theta": None, "sphere_map": None}
    return r.to_json()


def cmd_verify(args):
    results = verify.run_all(max_dim=args.max_dim, bound=min(args.bound, 2), products=args.products)
    for r in results:
        print(r.line(), file=sys.stderr)
    return {"passed": all(r.passed for r in results), "checks": [r.to_json() for r in results]}


COMMANDS = {
    "enumerate": cmd_enumerate, "cohomology": cmd_cohomology, "aut": cmd_aut, "iso": cmd_iso,
    "classify": cmd_classify, "diffeo-gb": cmd_diffeo_gb, "fan": cmd_fan, "realize": cmd_realize,
    "verify": cmd_verify,
}


# -- output -----------------------------------------------------------------------

def _is_matrix(x) -> bool:
    return isinstance(x, list) and x and all(isinstance(r, list) and r and all(isinstance(v, int) for v in r) for r in x)


def _table(doc, indent: str = "") -> List[str]:
    if _is_matrix(doc):
        width = max(len(str(v)) for r in doc for v in r)
        return [indent + "[ " + " ".join(str(v).rjust(width) for v in r) + " ]" for r in doc]
    if isinstance(doc, dict):
        out = []
        for k, v in doc.items():
            if isinstance(v, (dict, list)) and v:
                out.append(f"{indent}{k}:")
                out += _table(v, indent + "  ")
            else:
                out.append(f"{indent}{k}: {json.dumps(v)}")
        return out
    if isinstance(doc, list):
        out = []
        for i, v in enumerate(doc):
            if isinstance(v, (dict, list)):
                out.append(f"{indent}- [{i}]")
                out += _table(v, indent + "  ")
            else:
                out.append(f"{indent}- {json.dumps(v)}")
        return out
    return [indent + json.dumps(doc)]


def emit(doc, fmt: str = "json") -> str:
    if fmt == "table":
        return "\n".join(_table(doc)) + "\n"
    return json.dumps(doc, sort_keys=True) + "\n"


def run(argv: Sequence[str], out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(list(argv))
        if args.command is None:
            raise UsageError("missing subcommand")
        if args.bound < 0:
            raise ValidationError("bound must be nonnegative")
        doc = COMMANDS[args.command](args)
    except (UsageError, ValidationError) as exc:
        out.write(emit({"error": str(exc)}))
        return 2
    except Exception as exc:  # internal failure
        traceback.print_exc(file=sys.stderr)
        out.write(emit({"error": f"internal: {exc}"}))
        return 1
    out.write(emit(doc, args.format))
    if args.command == "verify" and not doc["passed"]:
        return 1
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    sys.exit(run(sys.argv[1:] if argv is None else argv))
