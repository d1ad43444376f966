"""Command-line front end.

Exit codes: 0 success / check passed, 1 check failed, 2 parse or
validation error, 3 infinite-type detection, 4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import __version__, catalog, verify
from .bichar import BraidingMatrix
from .cyclo import format_cyclo, get_context
from .errors import CapExceededError, InfiniteTypeError, InputError
from .freealg import format_element, parse_element
from .pbw import PBWSpec, format_recipe, parse_recipe, series_coefficients
from .quotient import NICHOLS, QuotientView, RelationSet
from .roots import explore_groupoid, positive_roots, reflect_object


# -- input documents ---------------------------------------------------------------


def parse_input_document(doc, label="input"):
    """Build (braiding, relations-or-None, recipes, caps) from a JSON dict."""
    try:
        order = int(doc["zeta_order"])
        theta = int(doc["size"])
        matrix_text = doc["matrix"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"input document missing field: {exc}") from exc
    ctx = get_context(order)
    if len(matrix_text) != theta or any(len(row) != theta for row in matrix_text):
        raise InputError(f"matrix is not {theta} x {theta}")
    entries = [[ctx.parse(cell) for cell in row] for row in matrix_text]
    braiding = BraidingMatrix(ctx, entries, label=label)
    relations = None
    if doc.get("relations"):
        gens = [parse_element(text, braiding) for text in doc["relations"]]
        relations = RelationSet(label, gens)
    recipes = {}
    for key, text in (doc.get("recipes") or {}).items():
        beta = tuple(int(p) for p in key.split(","))
        recipes[beta] = parse_recipe(text, ctx)
    caps = doc.get("caps") or {}
    return braiding, relations, recipes, caps


def input_document_from_entry(entry):
    doc = {
        "zeta_order": entry.braiding.ctx.order,
        "size": entry.braiding.theta,
        "matrix": [
            [format_cyclo(e) for e in row] for row in entry.braiding.q
        ],
        "relations": [format_element(g) for g in entry.relations.generators],
    }
    if entry.recipes:
        doc["recipes"] = {
            ",".join(map(str, beta)): format_recipe(r) for beta, r in entry.recipes.items()
        }
    return doc


def _load_target(name_or_path):
    """A catalog name or a JSON file path; returns a CatalogEntry-like bundle."""
    try:
        return catalog.get_entry(name_or_path)
    except InputError:
        pass
    try:
        with open(name_or_path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot open {name_or_path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"bad JSON in {name_or_path!r}: {exc}") from exc
    braiding, relations, recipes, caps = parse_input_document(doc, label=name_or_path)
    entry = catalog.CatalogEntry(
        name_or_path,
        braiding,
        relations if relations is not None else RelationSet(name_or_path, []),
        recipes,
    )
    entry._caps = caps
    return entry


def _input_hash(entry):
    doc = input_document_from_entry(entry)
    blob = json.dumps(doc, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _emit_report(report, entry, json_path):
    payload = report.to_json()
    payload["tool_version"] = __version__
    payload["input_hash"] = _input_hash(entry)
    if json_path:
        with open(json_path, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
    status = "PASS" if report.passed else "FAIL"
    print(f"[{status}] {report.check} on {report.label} params={report.params}")
    if not report.passed and report.witness:
        print(f"  witness: {report.witness}")
    return 0 if report.passed else 1


# -- commands ----------------------------------------------------------------------


def cmd_analyze(args):
    entry = _load_target(args.target)
    report = positive_roots(entry.braiding)
    atlas = explore_groupoid(entry.braiding, max_objects=args.max_objects)
    report.groupoid_object_count = atlas.object_count if atlas.complete else None
    payload = report.to_json()
    payload["tool_version"] = __version__
    payload["input_hash"] = _input_hash(entry)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
    print(f"braiding {entry.name}: theta={report.theta}, zeta order {report.braiding.ctx.order}")
    print(f"cartan matrix: {report.cartan_matrix}")
    print(f"longest word: {''.join(map(str, report.longest_word))}")
    print("positive roots (height, cartan):")
    for r in report.roots:
        flag = "cartan" if r.cartan else "      "
        print(f"  {r.beta}  N={r.height}  {flag}  chi(b,b)={r.self_braiding}")
    print(f"GK dims (U+, U>=0, U): {report.gk_dims}")
    print(f"power-root lattice basis: {report.z_lattice_basis} index={report.z_lattice_index}")
    if report.groupoid_object_count is not None:
        print(f"groupoid objects: {report.groupoid_object_count}")
    return 0


def cmd_hilbert(args):
    entry = _load_target(args.target)
    report = positive_roots(entry.braiding)
    series = series_coefficients(report, args.algebra, args.degree)
    rows = sorted(series.items(), key=lambda kv: (sum(kv[0]), kv[0]))
    mismatches = 0
    if args.oracle:
        if args.algebra == "nichols":
            view = entry.nichols()
        else:
            if not entry.relations.generators:
                raise InputError("prenichols oracle needs a relation list")
            view = entry.quotient()
        print(f"{'multidegree':>16} {'series':>8} {'quotient':>9}")
        for delta, coeff in rows:
            dim = view.dim(delta)
            marker = "" if dim == coeff else "   <-- MISMATCH"
            if dim != coeff:
                mismatches += 1
            print(f"{str(delta):>16} {coeff:>8} {dim:>9}{marker}")
    else:
        print(f"{'multidegree':>16} {'coeff':>8}")
        for delta, coeff in rows:
            print(f"{str(delta):>16} {coeff:>8}")
    if args.json:
        payload = {
            "algebra": args.algebra,
            "degree": args.degree,
            "coefficients": {";".join(map(str, d)): c for d, c in rows},
            "tool_version": __version__,
            "input_hash": _input_hash(entry),
        }
        with open(args.json, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
    return 1 if mismatches else 0


def cmd_reflect(args):
    entry = _load_target(args.target)
    image = reflect_object(entry.braiding, args.i)
    doc = {
        "zeta_order": image.ctx.order,
        "size": image.theta,
        "matrix": [[format_cyclo(e) for e in row] for row in image.q],
    }
    text = json.dumps(doc, indent=2, sort_keys=True)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_catalog(args):
    if args.action == "list":
        for name in catalog.list_names():
            print(name)
        return 0
    entry = catalog.get_entry(args.name)
    print(json.dumps(input_document_from_entry(entry), indent=2, sort_keys=True))
    return 0


def cmd_verify(args):
    entry = _load_target(args.target)
    braiding = entry.braiding
    check = args.check
    if check == "power-coproduct":
        report = verify.check_power_coproduct(braiding, args.i, args.N)
    elif check == "adjoint-coproducts":
        report = verify.check_adjoint_coproducts(braiding, args.i, args.j, args.N)
    elif check == "qcommute-powers":
        spec = entry.pbw_spec()
        beta = tuple(int(p) for p in args.beta.split(","))
        n = args.N or entry.report().root_datum(beta).height
        probe = parse_element(args.probe, braiding)
        report = verify.check_qcommute_powers(entry.quotient(), spec.root_vector(beta), n, probe)
    elif check == "derivations-vanish":
        spec = entry.pbw_spec()
        beta = tuple(int(p) for p in args.beta.split(","))
        n = args.N or entry.report().root_datum(beta).height
        report = verify.check_derivations_vanish(entry.quotient(), spec.root_vector(beta), n)
    elif check == "symmetric-character":
        report = verify.check_symmetric_character(braiding, entry.report())
    elif check == "left-coproduct":
        report = verify.check_left_coproduct_structure(entry.pbw_spec(), args.k)
    elif check == "super-a":
        report = verify.check_super_a_coproduct(entry, args.j, args.k, args.N)
    elif check == "straightening":
        report = verify.check_straightening(entry.pbw_spec(), args.k, args.l)
    elif check == "pbw-count":
        report = verify.check_pbw_count(entry.pbw_spec(), args.degree)
    elif check == "frakR-generators":
        report = verify.check_frakr_generator_identity(braiding, args.i, args.j, args.m)
    elif check == "br25-basic":
        report = verify.check_br25(entry.name.rsplit("-", 1)[-1], "basic")
    elif check == "br25-extended":
        report = verify.check_br25(entry.name.rsplit("-", 1)[-1], "extended")
    else:
        raise InputError(f"unknown check {check!r}")
    return _emit_report(report, entry, args.json)


CHECK_NAMES = [
    "power-coproduct",
    "adjoint-coproducts",
    "qcommute-powers",
    "derivations-vanish",
    "symmetric-character",
    "left-coproduct",
    "super-a",
    "straightening",
    "pbw-count",
    "frakR-generators",
    "br25-basic",
    "br25-extended",
]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="prenichols",
        description="Root systems, PBW data, Hilbert series and coproduct "
        "identities of distinguished pre-Nichols algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="compute the root-system report")
    p.add_argument("target", help="catalog name or input JSON path")
    p.add_argument("--json", help="write the report as JSON")
    p.add_argument("--max-objects", type=int, default=1000)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("hilbert", help="graded dimension table")
    p.add_argument("target")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--algebra", choices=["nichols", "prenichols"], required=True)
    p.add_argument("--oracle", action="store_true", help="also compute quotient dims and diff")
    p.add_argument("--json")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("verify", help="run a named check")
    p.add_argument("check", choices=CHECK_NAMES)
    p.add_argument("target")
    p.add_argument("--json")
    p.add_argument("--i", type=int, default=1)
    p.add_argument("--j", type=int, default=2)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--l", type=int, default=2)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--beta", default="1,0")
    p.add_argument("--probe", default="1")
    p.add_argument("--degree", type=int, default=6)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reflect", help="write the reflected braiding as an input document")
    p.add_argument("target")
    p.add_argument("-i", type=int, required=True)
    p.add_argument("--json")
    p.set_defaults(func=cmd_reflect)

    p = sub.add_parser("catalog", help="list or show built-in entries")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_catalog)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = 2
    except InfiniteTypeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = 3
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = 4
    sys.exit(code)


if __name__ == "__main__":
    main()
