"""Batch command-line front end; every subcommand emits one JSON document.

Exit codes: 0 success, 1 domain error (with {"error": ...} on stdout),
2 usage error.  Variables and certificate indices are 1-based in the
surface format.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .kouchnirenko import INFINITE, face_restriction, milnor_number
from .morse import classify_support, quadratic_restriction
from .poly import ParseError, determinant, parse_polynomial
from .polytope import (
    ConvexCombination,
    LatticePolytope,
    barycenter,
    contains_point,
    minimal_subpolytope,
    newton_polyhedron,
    newton_polytope,
)
from .stencil import certify, sample_generic_form, stencil_of

SEED_ENV = "NEWTON_CERTIFY_SEED"


def _parse_points(text: str, n: int) -> LatticePolytope:
    points = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        coords = tuple(int(v) for v in chunk.split(","))
        if len(coords) != n:
            raise ValueError(f"point {chunk!r} does not have {n} coordinates")
        points.append(coords)
    if not points:
        raise ValueError("empty point list")
    return LatticePolytope(n, tuple(points), False)


def _parse_covector(text: str):
    return [Fraction(v.strip()) for v in text.split(",")]


def _emit(doc: dict) -> int:
    print(json.dumps(doc, separators=(",", ":")))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="newtoncert",
        description="Exact Newton polytope geometry, nondegeneracy "
        "certificates and Milnor numbers.",
    )
    parser.add_argument("--seed", type=int, default=None,
                        help="seed for generic sampling (default: env %s)" % SEED_ENV)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, helptext, poly=False, points=False, flags=()):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--n", type=int, required=True, help="number of variables")
        if poly:
            p.add_argument("--poly", required=True, help="polynomial in x1..xn")
        if points:
            p.add_argument("--points", required=True,
                           help="semicolon-separated lattice points, e.g. '1,1,0;0,0,2'")
        for flag, helpmsg in flags:
            p.add_argument(flag, action="store_true", help=helpmsg)
        return p

    add("newton", "Newton polyhedron (or polytope) of a polynomial", poly=True,
        flags=(("--polytope", "emit the plain polytope without recession cone"),))
    p = sub.add_parser("contains-o", help="membership of the barycenter, with witness")
    p.add_argument("--n", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--points")
    group.add_argument("--poly")
    add("stencil", "stencil of a polytope in the quadratic simplex", points=True)
    add("certify", "matching or cover certificate for a support polytope", points=True)
    add("minimal", "minimal sub-polytope still containing the barycenter", points=True)
    add("morse", "never-Morse / generically-Morse classification", poly=True)
    add("milnor", "Milnor number via the Newton diagram", poly=True)
    w = add("face", "restriction of a polynomial to a diagram face", poly=True)
    w.add_argument("--w", required=True, help="positive rational covector, e.g. '1,1/2'")
    return parser


def run(argv) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    seed = args.seed
    if seed is None and os.environ.get(SEED_ENV):
        seed = int(os.environ[SEED_ENV])
    try:
        return _dispatch(args, seed)
    except (ValueError, ParseError, ZeroDivisionError) as exc:
        print(json.dumps({"error": str(exc)}, separators=(",", ":")))
        return 1


def _dispatch(args, seed) -> int:
    if args.command == "newton":
        f = parse_polynomial(args.poly, args.n)
        hull = newton_polytope(f) if args.polytope else newton_polyhedron(f)
        return _emit(hull.to_json_dict())

    if args.command == "contains-o":
        if args.points:
            M = _parse_points(args.points, args.n)
        else:
            M = newton_polyhedron(parse_polynomial(args.poly, args.n))
        result = contains_point(M, barycenter(args.n))
        if isinstance(result, ConvexCombination):
            return _emit({"contains": True, "combination": result.to_json_dict()})
        return _emit({"contains": False, "separation": result.to_json_dict()})

    if args.command == "stencil":
        M = _parse_points(args.points, args.n)
        return _emit(stencil_of(M).to_json_dict())

    if args.command == "certify":
        M = _parse_points(args.points, args.n)
        cert = certify(M)
        doc = cert.to_json_dict()
        if seed is not None and cert.kind == "matching":
            doc["sample"] = _sample_evidence(M, seed)
        return _emit(doc)

    if args.command == "minimal":
        M = _parse_points(args.points, args.n)
        return _emit(minimal_subpolytope(M).to_json_dict())

    if args.command == "morse":
        f = parse_polynomial(args.poly, args.n)
        verdict = classify_support(newton_polyhedron(f))
        doc = verdict.to_json_dict()
        if seed is not None and verdict.kind == "generically_morse":
            restricted = quadratic_restriction(newton_polyhedron(f))
            doc["sample"] = _sample_evidence(restricted, seed)
        return _emit(doc)

    if args.command == "milnor":
        f = parse_polynomial(args.poly, args.n)
        mu = milnor_number(f)
        value = "infinite" if mu == INFINITE else mu
        return _emit({"mu": value, "conditional": True})

    if args.command == "face":
        f = parse_polynomial(args.poly, args.n)
        restricted = face_restriction(f, _parse_covector(args.w))
        return _emit({"poly": restricted.render()})

    raise AssertionError(f"unhandled command {args.command}")


def _sample_evidence(M: LatticePolytope, seed: int) -> dict:
    det = determinant(sample_generic_form(M, seed))
    return {"seed": seed, "det": str(det), "nonzero": bool(det)}


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
