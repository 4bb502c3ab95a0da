"""Command-line interface: ``tropfiber <command> [options]``.

Every command builds one output record (a JSON-compatible dict).  With
``--json`` the record is printed as canonical JSON (sorted keys, schema
``tropfiber/1``, see ``docs/output-schema.md``); otherwise a short text
rendering is printed.

Exit codes: 0 success (BUDGET_EXHAUSTED results included, flagged in the
record), 2 parse or validation error, 3 residue not in the field,
4 degenerate specialization after all retries, 5 internal invariant
violation.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .errors import (
    DegenerateSpecialization,
    InvalidResidue,
    InvariantViolation,
    ParseError,
    PrecisionError,
    ResidueNotInField,
    TropFiberError,
    UnsupportedError,
    ZeroPolyError,
)
from .fields import make_field
from .lifting import LiftBudget, enumerate_roots, lift_root, sample_fiber
from .maps import (
    MonomialMap,
    TorusPoint,
    apply_map,
    check_exploded_functoriality,
    check_functoriality,
    exploded_point,
    random_map,
    random_torus_point,
)
from .parsing import parse_point, parse_poly, parse_series
from .series import EXACT, exp_text
from .tropical import init_form, newton_polygon, trop_curve, trop_member

SCHEMA = "tropfiber/1"

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_RESIDUE = 3
EXIT_DEGENERATE = 4
EXIT_INTERNAL = 5


class CommandError(TropFiberError):
    """Bad command-line input that is not a grammar error."""


# ---------------------------------------------------------------------------
# encoding


def enc_exp(e):
    return None if e is None else exp_text(e)


def enc_elem(field, c):
    return field.render(field(c))


def enc_series(s):
    return {
        "terms": [{"exp": exp_text(e), "coeff": s.field.render(c)} for e, c in s.terms],
        "precision": exp_text(s.precision),
        "text": s.to_text(),
    }


def enc_vector(v):
    return [exp_text(x) for x in v]


def enc_field(field):
    out = {"name": field.name, "characteristic": field.characteristic}
    if field.characteristic:
        out.update(p=field.p, k=field.k)
        if field.k > 1:
            out["modulus"] = [int(c) for c in field.modulus]
    return out


def enc_root(r):
    return {
        "value": enc_series(r.value),
        "series": enc_series(r.series()),
        "multiplicity": r.multiplicity,
        "status": r.status.value,
        "achieved_precision": exp_text(r.achieved_precision),
        "accuracy": exp_text(r.accuracy),
        "valuation": exp_text(r.valuation),
        "residue": enc_elem(r.value.field, r.residue),
        "residual_valuations": [exp_text(y) for y in r.residual_valuations],
        "steps": [{"exp": exp_text(e), "coeff": enc_elem(r.value.field, c)} for e, c in r.steps],
        "shift": None if r.shift is None else enc_elem(r.value.field, r.shift),
    }


def enc_failure(fl, field):
    return {
        "valuation": exp_text(fl.valuation),
        "multiplicity": fl.multiplicity,
        "reason": fl.reason,
        "poly": [enc_elem(field, c) for c in fl.poly],
        "residue": None if fl.residue is None else enc_elem(field, fl.residue),
    }


def enc_initial_form(form):
    return {
        "text": form.to_text(),
        "monomials": [{"exponent": list(u), "coeff": enc_elem(form.field, c)} for u, c in form.monomials],
        "base_weight": exp_text(form.base_weight),
        "point": enc_vector(form.point),
        "is_monomial": form.is_monomial(),
    }


def enc_fiber_point(pt, field):
    return {
        "coords": [enc_series(c) for c in pt.coords],
        "trop": enc_vector(pt.trop),
        "residues": [enc_elem(field, c) for c in pt.residues],
        "status": pt.root.status.value if pt.root else None,
        "achieved_precision": enc_exp(pt.achieved_precision),
    }


# ---------------------------------------------------------------------------
# argument helpers


def _field(args):
    if args.field == "Fp" and args.p is None:
        raise CommandError("--field Fp needs --p")
    try:
        return make_field(args.field, args.p, args.k)
    except ValueError as exc:
        raise CommandError(str(exc)) from None


def _poly(args, field):
    names = tuple(v.strip() for v in args.vars.split(",")) if args.vars else None
    return parse_poly(args.poly, field, names)


def _budget(args):
    if args.max_terms < 1 or args.max_iterations < 1:
        raise CommandError("--max-terms and --max-iterations must be positive")
    return LiftBudget(args.precision, args.max_terms, args.max_iterations)


def _coeff(text, field):
    s = parse_series(text, field)
    if not (s.is_exact() and len(s.terms) == 1 and s.terms[0][0] == 0):
        raise CommandError(f"{text!r} is not a nonzero element of {field.name}")
    return s.terms[0][1]


def _coeffs(text, field):
    return tuple(_coeff(part, field) for part in text.split(","))


def _coords(text, field):
    return TorusPoint(parse_series(part, field) for part in text.split(","))


def _matrix(text):
    try:
        return MonomialMap([[int(a) for a in row.split(",")] for row in text.split(";")])
    except ValueError:
        raise CommandError(f"bad matrix {text!r}: rows separated by ';', entries by ','") from None


def _check_point(v, f):
    if len(v) != f.nvars:
        raise CommandError(f"point has {len(v)} coordinates but the polynomial has {f.nvars} variables")
    return v


# ---------------------------------------------------------------------------
# commands


def cmd_lift(args, field):
    f = _poly(args, field)
    root = lift_root(f, args.valuation, _coeff(args.residue, field), _budget(args))
    return {"root": enc_root(root)}, _text_root(root)


def cmd_roots(args, field):
    f = _poly(args, field)
    rep = enumerate_roots(f, _budget(args))
    rec = {
        "roots": [enc_root(r) for r in rep.roots],
        "failures": [enc_failure(fl, field) for fl in rep.failures],
        "expected": rep.expected,
        "found": rep.total_multiplicity,
        "complete": rep.complete,
    }
    lines = [f"{len(rep.roots)} root(s), total multiplicity {rep.total_multiplicity} of {rep.expected}"]
    for r in rep.roots:
        lines.append(_text_root(r))
    for fl in rep.failures:
        lines.append(f"unlifted: valuation {fl.valuation}, multiplicity {fl.multiplicity}: {fl.reason}")
    return rec, "\n".join(lines)


def _num(e):
    return "exact" if e == EXACT else str(e)


def _text_root(r):
    if r.accuracy == EXACT:
        return f"{r.value.to_text()}  [mult {r.multiplicity}, {r.status.value}]"
    return (
        f"{r.value.to_text()}  [mult {r.multiplicity}, {r.status.value}, "
        f"root = value + O(t^({r.accuracy})), val f(value) >= {_num(r.achieved_precision)}]"
    )


def cmd_trop(args, field):
    f = _poly(args, field)
    v = _check_point(parse_point(args.point), f)
    form = init_form(f, v)
    member = trop_member(f, v)
    return (
        {"member": member, "initial_form": enc_initial_form(form)},
        f"member: {str(member).lower()}\ninitial form: {form.to_text()}",
    )


def cmd_init(args, field):
    f = _poly(args, field)
    v = _check_point(parse_point(args.point), f)
    form = init_form(f, v)
    return (
        {"initial_form": enc_initial_form(form)},
        f"{form.to_text()}  (base weight {form.base_weight})",
    )


def cmd_newton_polygon(args, field):
    f = _poly(args, field)
    segs = newton_polygon(f)
    rec = {
        "segments": [
            {
                "root_valuation": exp_text(s.root_valuation),
                "multiplicity": s.multiplicity,
                "residual_poly": [enc_elem(field, c) for c in s.residual_poly],
                "start": s.start,
                "end": s.end,
            }
            for s in segs
        ]
    }
    lines = [
        f"valuation {s.root_valuation}, multiplicity {s.multiplicity}, degrees {s.start}..{s.end}"
        for s in segs
    ]
    return rec, "\n".join(lines)


def cmd_trop_curve(args, field):
    f = _poly(args, field)
    curve = trop_curve(f)
    edges = []
    for e in curve.edges:
        edges.append(
            {
                "kind": e.kind,
                "direction": list(e.direction),
                "multiplicity": e.multiplicity,
                "start": e.start,
                "end": e.end,
                "point": enc_vector(e.point) if e.kind == "line" else None,
            }
        )
    rec = {
        "vertices": [enc_vector(p) for p in curve.vertices],
        "edges": edges,
        "balanced": curve.is_balanced(),
    }
    lines = [f"vertex {i}: ({', '.join(str(x) for x in p)})" for i, p in enumerate(curve.vertices)]
    for e in curve.edges:
        where = f"through ({', '.join(str(x) for x in e.point)})" if e.kind == "line" else f"from vertex {e.start}"
        if e.kind == "segment":
            where += f" to vertex {e.end}"
        lines.append(f"{e.kind} {where}, direction {e.direction}, multiplicity {e.multiplicity}")
    lines.append(f"balanced: {str(curve.is_balanced()).lower()}")
    return rec, "\n".join(lines)


def cmd_tropicalize_point(args, field):
    x = _coords(args.coords, field)
    v, res = exploded_point(x)
    rec = {"trop": enc_vector(v), "residues": [enc_elem(field, c) for c in res]}
    text = f"trop: ({', '.join(str(a) for a in v)})\nresidues: ({', '.join(field.render(c) for c in res)})"
    if args.matrix:
        A = _matrix(args.matrix)
        y = apply_map(A, x)
        w, res2 = exploded_point(y)
        rec["image"] = {
            "coords": [enc_series(c) for c in y],
            "trop": enc_vector(w),
            "residues": [enc_elem(field, c) for c in res2],
        }
        text += f"\nimage trop: ({', '.join(str(a) for a in w)})"
    return rec, text


def cmd_lift_point(args, field):
    f = _poly(args, field)
    v = _check_point(parse_point(args.point), f)
    xbar = _coeffs(args.residues, field)
    pts = sample_fiber(f, v, xbar, 1, _budget(args), args.seed, args.retries, args.solve_for)
    pt = pts[0]
    return {"point": enc_fiber_point(pt, field)}, _text_fiber_point(pt)


def cmd_sample_fiber(args, field):
    if args.count < 1:
        raise CommandError("--count must be positive")
    f = _poly(args, field)
    v = _check_point(parse_point(args.point), f)
    xbar = _coeffs(args.residues, field)
    pts = sample_fiber(f, v, xbar, args.count, _budget(args), args.seed, args.retries, args.solve_for)
    rec = {
        "points": [enc_fiber_point(p, field) for p in pts],
        "requested": pts.requested,
        "found": len(pts),
        "shortfall": pts.shortfall,
    }
    lines = [_text_fiber_point(p) for p in pts]
    if pts.shortfall:
        lines.append(f"only {len(pts)} distinct points of {pts.requested} requested")
    return rec, "\n".join(lines)


def _text_fiber_point(p):
    coords = ", ".join(c.to_text() for c in p.coords)
    return f"({coords})  [val f >= {_num(p.achieved_precision)}]"


def cmd_check_functoriality(args, field):
    if args.random:
        rng = random.Random(args.seed)
        plain = exploded = 0
        for _ in range(args.random):
            n = rng.randint(1, 3)
            m = rng.randint(1, 3)
            A = random_map(rng, m, n)
            x = random_torus_point(rng, field, n)
            plain += check_functoriality(A, x)
            exploded += check_exploded_functoriality(A, x)
        rec = {"trials": args.random, "plain_passed": plain, "exploded_passed": exploded,
               "plain": plain == args.random, "exploded": exploded == args.random}
        text = f"plain: {plain}/{args.random}\nexploded: {exploded}/{args.random}"
        return rec, text
    if not (args.matrix and args.coords):
        raise CommandError("give --matrix and --coords, or --random N")
    A = _matrix(args.matrix)
    x = _coords(args.coords, field)
    plain = check_functoriality(A, x)
    exploded = check_exploded_functoriality(A, x)
    return (
        {"plain": plain, "exploded": exploded},
        f"plain: {str(plain).lower()}\nexploded: {str(exploded).lower()}",
    )


COMMANDS = {
    "lift": cmd_lift,
    "roots": cmd_roots,
    "trop": cmd_trop,
    "init": cmd_init,
    "newton-polygon": cmd_newton_polygon,
    "trop-curve": cmd_trop_curve,
    "tropicalize-point": cmd_tropicalize_point,
    "lift-point": cmd_lift_point,
    "sample-fiber": cmd_sample_fiber,
    "check-functoriality": cmd_check_functoriality,
}


# ---------------------------------------------------------------------------
# argument parsing


def _rational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("global options")
    g.add_argument("--field", choices=["Q", "Fp"], default="Q", help="coefficient field (default Q)")
    g.add_argument("--p", type=int, help="characteristic for --field Fp")
    g.add_argument("--k", type=int, default=1, help="extension degree for --field Fp (default 1)")
    g.add_argument("--precision", type=_rational, default=Fraction(10), help="target precision (default 10)")
    g.add_argument("--max-terms", type=int, default=64, help="term budget per root (default 64)")
    g.add_argument("--max-iterations", type=int, default=256, help="Newton step budget (default 256)")
    g.add_argument("--seed", type=int, default=0, help="perturbation / sampling seed (default 0)")
    g.add_argument("--json", action="store_true", help="print the machine-readable record")
    g.add_argument("--vars", help="comma-separated variable names, in order")

    parser = argparse.ArgumentParser(
        prog="tropfiber", description="Tropical fibers, initial forms and Newton lifting over k((t^Q))."
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text, description=help_text)

    p = add("lift", "lift a residue root at a valuation to a series root")
    p.add_argument("--poly", required=True)
    p.add_argument("--valuation", type=_rational, required=True)
    p.add_argument("--residue", required=True)

    p = add("roots", "enumerate all series roots of a univariate polynomial")
    p.add_argument("--poly", required=True)

    for name, text in (("trop", "tropical membership test"), ("init", "initial form at a point")):
        p = add(name, text)
        p.add_argument("--poly", required=True)
        p.add_argument("--point", required=True, help="comma-separated rationals")

    p = add("newton-polygon", "Newton polygon segments of a univariate polynomial")
    p.add_argument("--poly", required=True)

    p = add("trop-curve", "tropical curve of a polynomial in two variables")
    p.add_argument("--poly", required=True)

    p = add("tropicalize-point", "valuations and residues of a torus point")
    p.add_argument("--coords", required=True, help="comma-separated series")
    p.add_argument("--matrix", help="also apply a monomial map: rows ';'-separated")

    for name, text in (
        ("lift-point", "lift residues to a hypersurface point in a tropical fiber"),
        ("sample-fiber", "sample distinct hypersurface points in one exploded fiber"),
    ):
        p = add(name, text)
        p.add_argument("--poly", required=True)
        p.add_argument("--point", required=True, help="valuation vector, comma-separated")
        p.add_argument("--residues", required=True, help="residue vector, comma-separated")
        p.add_argument("--retries", type=int, default=20)
        p.add_argument("--solve-for", type=int, default=0, help="index of the coordinate to solve for")
        if name == "sample-fiber":
            p.add_argument("--count", type=int, required=True)

    p = add("check-functoriality", "check Trop and exploded functoriality for a monomial map")
    p.add_argument("--matrix")
    p.add_argument("--coords")
    p.add_argument("--random", type=int, default=0, help="run N seeded random trials instead")
    return parser


def _dump(record):
    return json.dumps(record, sort_keys=True, indent=2, ensure_ascii=False)


def run_command(argv, out=None, err=None):
    """Run one command; returns the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK

    def fail(code, kind, exc, **extra):
        record = {"schema": SCHEMA, "command": args.command, "ok": False,
                  "error": {"kind": kind, "message": str(getattr(exc, "message", exc)), **extra}}
        if args.json:
            print(_dump(record), file=out)
        print(f"error: {exc}", file=err)
        return code

    try:
        field = _field(args)
        record, text = COMMANDS[args.command](args, field)
    except ParseError as exc:
        return fail(EXIT_INPUT, "ParseError", exc, line=exc.line, column=exc.column, expected=list(exc.expected))
    except ResidueNotInField as exc:
        poly = [enc_elem(field, c) for c in exc.poly] if exc.poly else []
        return fail(EXIT_RESIDUE, "ResidueNotInField", exc, poly=poly)
    except DegenerateSpecialization as exc:
        return fail(EXIT_DEGENERATE, "DegenerateSpecialization", exc)
    except InvariantViolation as exc:
        return fail(EXIT_INTERNAL, "InvariantViolation", exc)
    except (CommandError, InvalidResidue, PrecisionError, ZeroPolyError, UnsupportedError, ValueError) as exc:
        return fail(EXIT_INPUT, type(exc).__name__, exc)
    except Exception as exc:  # anything else is a bug: report it as an internal failure
        return fail(EXIT_INTERNAL, "InternalError", exc)
    if args.json:
        full = {"schema": SCHEMA, "command": args.command, "ok": True, "field": enc_field(field), **record}
        print(_dump(full), file=out)
    else:
        print(text, file=out)
    return EXIT_OK


def main(argv=None):
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
