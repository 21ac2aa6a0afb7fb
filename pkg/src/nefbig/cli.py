"""Command-line front end.

Fans travel as the shared JSON format (``-`` reads stdin, so commands can be
piped); reports are printed human-readable by default and as a stable JSON
schema with ``--json``.  All rational output is exact: fractions print as
``p/q`` in lowest terms, lattice vectors as comma-separated integers.

Exit codes: 0 for success (and for affirmative predicates), 1 for a negative
predicate (invalid fan, predicate false, 'special', projection overlap),
2 for malformed input or violated preconditions.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import batyrev, catalog, divisors, fans
from .cones import Cone, Membership
from .fans import Fan, InvalidFanError, ProjectionOverlap

REPORT_VERSION = 1


def _rat_str(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _vec_str(v) -> str:
    return ",".join(_rat_str(x) for x in v)


def _relation_str(vec) -> str:
    terms = []
    for i, c in enumerate(vec):
        if c == 0:
            continue
        mag = abs(c)
        body = f"r{i}" if mag == 1 else f"{mag}*r{i}"
        terms.append(("- " if c < 0 else "+ ") + body)
    if not terms:
        return "0 = 0"
    head = terms[0][2:] if terms[0].startswith("+ ") else "-" + terms[0][2:]
    return " ".join([head] + terms[1:]) + " = 0"


def _emit_json(payload: dict) -> None:
    payload = {"report_version": REPORT_VERSION, **payload}
    sys.stdout.write(json.dumps(payload, sort_keys=True, separators=(", ", ": ")) + "\n")


def _read_fan(path: str) -> Fan:
    text = sys.stdin.read() if path == "-" else open(path, "r", encoding="utf-8").read()
    return fans.fan_from_json(text)


def _cone_payload(cone: Cone) -> dict:
    return {
        "dim": cone.dim(),
        "extremal_rays": [list(r) for r in cone.rays],
        "lineality": [list(l) for l in cone.lineality],
        "facets": [list(a) for a in cone.facet_normals],
        "equations": [list(e) for e in cone.span_equations],
    }


def _print_cone(cone: Cone) -> None:
    print(f"dim: {cone.dim()}")
    print(f"extremal rays: {len(cone.rays)}")
    for r in cone.rays:
        print(f"  {_vec_str(r)}")
    if cone.lineality:
        print(f"lineality: {len(cone.lineality)}")
        for l in cone.lineality:
            print(f"  {_vec_str(l)}")
    print(f"facets: {len(cone.facet_normals)}")
    for a in cone.facet_normals:
        print(f"  {_vec_str(a)}")
    if cone.span_equations:
        print(f"equations: {len(cone.span_equations)}")
        for e in cone.span_equations:
            print(f"  {_vec_str(e)}")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_validate(args) -> int:
    fan = _read_fan(args.fan)
    report = fans.validate(fan)
    if args.json:
        _emit_json(
            {
                "command": "validate",
                "valid": report.ok,
                "violations": [
                    {"kind": v.kind, "detail": v.detail} for v in report.violations
                ],
            }
        )
    else:
        if report.ok:
            print("valid")
        for v in report.violations:
            print(f"violation {v.kind}: {v.detail}")
    return 0 if report.ok else 1


def _cmd_analyze(args) -> int:
    fan = _read_fan(args.fan)
    fans.ensure_valid(fan)
    complete = fans.is_complete(fan)
    smooth = fans.is_smooth(fan)
    rho = divisors.class_space(fan).picard_rank if complete else None
    projective = divisors.is_projective(fan) if complete else None
    if args.json:
        _emit_json(
            {
                "command": "analyze",
                "dim": fan.dim,
                "rays": fan.n_rays,
                "max_cones": len(fan.max_cones),
                "picard_rank": rho,
                "smooth": smooth,
                "complete": complete,
                "projective": projective,
            }
        )
    else:
        print(f"dim: {fan.dim}")
        print(f"rays: {fan.n_rays}")
        print(f"max cones: {len(fan.max_cones)}")
        print(f"picard_rank: {rho if rho is not None else 'n/a'}")
        print(f"smooth: {str(smooth).lower()}")
        print(f"complete: {str(complete).lower()}")
        print(f"projective: {str(projective).lower() if projective is not None else 'n/a'}")
    return 0


def _cmd_cone(args, which: str) -> int:
    fan = _read_fan(args.fan)
    cone = divisors.nef_cone(fan) if which == "nef" else divisors.mori_cone(fan)
    rho = divisors.class_space(fan).picard_rank
    if args.json:
        payload = {"command": which, "picard_rank": rho}
        payload.update(_cone_payload(cone))
        _emit_json(payload)
    else:
        space = "divisor classes" if which == "nef" else "curve classes"
        print(f"{which} cone in the rank-{rho} space of {space}")
        _print_cone(cone)
    return 0


def _cmd_collections(args) -> int:
    fan = _read_fan(args.fan)
    if not fans.is_smooth(fan):
        raise ValueError("primitive relations are computed for smooth fans only")
    rels = batyrev.primitive_relations(fan)
    if args.json:
        _emit_json(
            {
                "command": "collections",
                "collections": [
                    {
                        "rays": list(r.collection.ray_indices),
                        "focus": list(r.focus),
                        "coefficients": list(r.coefficients),
                        "relation": list(r.relation),
                    }
                    for r in rels
                ],
            }
        )
    else:
        print(f"primitive collections: {len(rels)}")
        for r in rels:
            indices = ",".join(str(i) for i in r.collection.ray_indices)
            print(f"  {{{indices}}}: {_relation_str(r.relation)}")
    return 0


def _cmd_bignef(args) -> int:
    fan = _read_fan(args.fan)
    predicate = divisors.boundary_meets_only_at_zero(fan)
    pe = divisors.pseudo_effective_cone(fan)
    verdicts = [
        (ray, pe.membership(ray) is Membership.INTERIOR)
        for ray in divisors.nef_cone(fan).rays
    ]
    witness = divisors.has_nontrivial_nonbig_nef(fan)
    if args.json:
        _emit_json(
            {
                "command": "bignef",
                "predicate": predicate,
                "nef_extremal_rays": [
                    {"ray": list(r), "big": big} for r, big in verdicts
                ],
                "witness": None
                if witness is None
                else {
                    "divisor": [int(c) for c in witness.coefficients],
                    "class": list(witness.coords),
                },
            }
        )
    else:
        print(f"predicate: {'TRUE' if predicate else 'FALSE'}")
        for ray, big in verdicts:
            print(f"  nef ray {_vec_str(ray)}: {'big' if big else 'not big'}")
        if witness is not None:
            print(
                f"  non-big nef witness: divisor {_vec_str(witness.coefficients)}"
                f" with class {_vec_str(witness.coords)}"
            )
    return 0 if predicate else 1


def _cmd_general(args) -> int:
    fan = _read_fan(args.fan)
    result = batyrev.is_general(fan)
    if args.json:
        cert = result.certificate
        _emit_json(
            {
                "command": "general",
                "general": result.is_general,
                "certificate": None
                if cert is None
                else {
                    "ray_indices": list(cert.ray_indices),
                    "coefficients": list(cert.coefficients),
                },
            }
        )
    else:
        if result.is_general:
            print(f"general (no positive relation of size <= {fan.dim})")
        else:
            cert = result.certificate
            vec = [0] * fan.n_rays
            for i, c in zip(cert.ray_indices, cert.coefficients):
                vec[i] = c
            print(f"special: {_relation_str(vec)}")
    return 0 if result.is_general else 1


def _cmd_subdivide(args) -> int:
    fan = _read_fan(args.fan)
    point = tuple(int(x) for x in args.at.split(","))
    out = fans.star_subdivision(fan, point)
    sys.stdout.write(fans.fan_to_json(out))
    return 0


def _cmd_project(args) -> int:
    fan = _read_fan(args.fan)
    rows = [
        tuple(int(x) for x in row.split(","))
        for row in args.matrix.split(";")
        if row.strip()
    ]
    result = fans.project_fan(fan, rows)
    if isinstance(result, Fan):
        if args.json:
            _emit_json(
                {
                    "command": "project",
                    "quotient": fans.fan_to_dict(result),
                    "overlap": None,
                }
            )
        else:
            sys.stdout.write(fans.fan_to_json(result))
        return 0
    assert isinstance(result, ProjectionOverlap)
    if args.json:
        _emit_json(
            {
                "command": "project",
                "quotient": None,
                "overlap": {
                    "cone_a": list(result.cone_a),
                    "cone_b": list(result.cone_b),
                    "image_a": [list(v) for v in result.image_a],
                    "image_b": [list(v) for v in result.image_b],
                },
            }
        )
    else:
        print("no quotient fan: cone images overlap in a full-dimensional set")
        print(f"  cone {{{_vec_str(result.cone_a)}}} image generated by "
              + "; ".join(_vec_str(v) for v in result.image_a))
        print(f"  cone {{{_vec_str(result.cone_b)}}} image generated by "
              + "; ".join(_vec_str(v) for v in result.image_b))
    return 1


def _cmd_catalog(args) -> int:
    name = args.name
    needs_n = {"p", "ndim-8-10"}
    needs_k = {"xk"}
    param: Optional[int] = args.param
    if args.n is not None:
        param = args.n
    if args.k is not None:
        param = args.k
    if name in needs_n or name in needs_k:
        if param is None:
            raise ValueError(f"catalog entry {name!r} needs a parameter (--n/--k)")
    if name == "p":
        fan = catalog.projective_space(param)
    elif name == "example-8-10":
        fan = catalog.threefold_8_10()
    elif name == "xk":
        fan = catalog.tower_threefold(param)
    elif name == "ndim-8-10":
        fan = catalog.blowup_chain(param)
    elif name == "miyake-oda":
        fan = catalog.miyake_oda()
    elif name == "blown-up-p2":
        fan = catalog.blown_up_p2()
    elif name == "p1xp1":
        fan = catalog.product_fan(catalog.projective_space(1), catalog.projective_space(1))
    elif name == "p1xp2":
        fan = catalog.product_fan(catalog.projective_space(1), catalog.projective_space(2))
    elif name == "product":
        if not args.base or not args.other:
            raise ValueError("catalog product needs --base and --other fan files")
        fan = catalog.product_fan(_read_fan(args.base), _read_fan(args.other))
    elif name == "split-bundle":
        if not args.base or args.twist is None or args.k is None:
            raise ValueError("catalog split-bundle needs --base, --twist and --k")
        twist = tuple(int(x) for x in args.twist.split(","))
        fan = catalog.projectivized_split_bundle(_read_fan(args.base), twist, args.k)
    else:
        raise ValueError(f"unknown catalog entry {name!r}")
    sys.stdout.write(fans.fan_to_json(fan))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nefbig",
        description="Exact fan computations for toric nef/effective cone geometry.",
    )
    parser.add_argument("--json", action="store_true", help="machine-readable reports")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_: str, with_fan: bool = True):
        p = sub.add_parser(name, help=help_)
        # SUPPRESS keeps a pre-subcommand --json from being overwritten
        p.add_argument(
            "--json", action="store_true", default=argparse.SUPPRESS,
            help="machine-readable report",
        )
        if with_fan:
            p.add_argument("fan", help="fan JSON file, or - for stdin")
        return p

    add("validate", "check the fan invariants; exit 0 iff valid")
    add("analyze", "dimension, ray count, Picard rank, smooth/complete/projective")
    add("nef", "nef cone in divisor class coordinates")
    add("mori", "cone of effective curve classes")
    add("collections", "primitive collections and relations (smooth fans)")
    add("bignef", "the predicate that every nontrivial nef class is big; exit 0 iff true")
    add("general", "positive-relation classifier; exit 0 iff 'general'")
    p = add("subdivide", "star subdivision at a lattice point")
    p.add_argument("--at", required=True, metavar="X,Y,...", help="subdivision point")
    p = add("project", "push the fan through a lattice projection")
    p.add_argument(
        "--matrix", required=True, metavar="R1;R2;...",
        help="projection rows, comma-separated entries, rows separated by ';'",
    )
    p = add("catalog", "emit a named fan as JSON", with_fan=False)
    p.add_argument("name", help="p | example-8-10 | xk | ndim-8-10 | miyake-oda | "
                   "blown-up-p2 | p1xp1 | p1xp2 | product | split-bundle")
    p.add_argument("param", nargs="?", type=int, help="parameter for p/xk/ndim-8-10")
    p.add_argument("--n", type=int, help="dimension parameter")
    p.add_argument("--k", type=int, help="rank/fiber parameter")
    p.add_argument("--twist", help="twist coefficients for split-bundle")
    p.add_argument("--base", help="base fan file for product/split-bundle")
    p.add_argument("--other", help="second factor fan file for product")
    return parser


_HANDLERS = {
    "validate": _cmd_validate,
    "analyze": _cmd_analyze,
    "nef": lambda a: _cmd_cone(a, "nef"),
    "mori": lambda a: _cmd_cone(a, "mori"),
    "collections": _cmd_collections,
    "bignef": _cmd_bignef,
    "general": _cmd_general,
    "subdivide": _cmd_subdivide,
    "project": _cmd_project,
    "catalog": _cmd_catalog,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (ValueError, InvalidFanError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
