"""Command-line front end.

Exit codes: 0 on success, 1 when a verification fails, 2 on usage or input
errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import catalog
from .action import action_matrix, check_group_law
from .cremona import invert_triangular, phi_from_algebra, phi_inverse_via_log, verify_conjugation
from .groebner import (
    GroebnerError,
    IdealPresentation,
    algebra_from_presentation,
    buchberger,
    monomial_label,
    quotient_basis,
)
from .ht import BasisNotFiltrationCompatible, basic_polynomials, check_basic_subspace, default_names, is_triangular
from .localalg import AlgebraError, check_axioms, exp, format_table, log, parse_table
from .parsing import ParseError, parse_presentation
from .polyring import GREVLEX, MonomialOrder, PolyError, format_rational

ORDERS = ("grevlex", "grlex", "lex")


class UsageError(Exception):
    pass


def _fmt(c) -> str:
    return format_rational(c) if isinstance(c, Fraction) else str(c)


def _read_source(spec: str) -> str:
    if spec.startswith("@"):
        try:
            with open(spec[1:], encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {spec[1:]}: {exc.strerror}") from None
    return spec


def _is_presentation(text: str) -> bool:
    return re.match(r"\s*Q\s*\[", text) is not None


def resolve_presentation(spec: str) -> IdealPresentation:
    if spec in catalog.names():
        return parse_presentation(catalog.get(spec).presentation)
    text = _read_source(spec)
    if not _is_presentation(text):
        raise UsageError("expected a presentation such as 'Q[S1]/(S1^3)'")
    return parse_presentation(text.strip())


def resolve_algebra(spec: str, order: MonomialOrder, *, check: bool = True):
    """Catalog name, inline presentation, or ``@file`` (presentation or table).

    With ``check=False`` a structure table is loaded even if it violates the
    axioms, so that ``verify`` can report on it.
    """
    if spec in catalog.names():
        return catalog.get(spec).algebra
    text = _read_source(spec)
    if _is_presentation(text):
        return algebra_from_presentation(parse_presentation(text.strip()), order)
    if spec.startswith("@"):
        return parse_table(text, check=check)
    raise UsageError(f"{spec!r} is neither a catalog name nor a presentation")


def _parse_vector(text: str, n: int, what: str) -> list:
    parts = [p.strip() for p in text.split(",")] if text.strip() else []
    if len(parts) != n:
        raise UsageError(f"{what} needs {n} comma-separated values, got {len(parts)}")
    try:
        return [Fraction(p) for p in parts]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{what} values must be rationals like 3 or -1/2") from None


def _emit(args, text_lines, payload):
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


# -- subcommands ------------------------------------------------------------


def cmd_parse(args) -> int:
    pres = resolve_presentation(args.algebra)
    payload = {"variables": list(pres.variables),
               "generators": [str(g) for g in pres.generators],
               "presentation": str(pres)}
    _emit(args, [str(pres)], payload)
    return 0


def cmd_basic_polys(args) -> int:
    A = resolve_algebra(args.algebra, args.order)
    fs = basic_polynomials(A, allow_incompatible=args.allow_incompatible)
    payload = {"basis": list(A.labels), "variables": list(fs.variables),
               "basic_polynomials": [str(f) for f in fs]}
    _emit(args, fs.lines(), payload)
    return 0


def cmd_action_matrix(args) -> int:
    A = resolve_algebra(args.algebra, args.order)
    y = _parse_vector(args.at, A.n, "--at") if args.at is not None else None
    M = action_matrix(A, y)
    payload = {"basis": list(A.labels),
               "variables": list(default_names("y", A.n)) if y is None else [],
               "rows": M.to_json()}
    _emit(args, M.lines(), payload)
    return 0


def _element_cmd(args, op) -> int:
    A = resolve_algebra(args.algebra, args.order)
    if args.element is None:
        a = A.generic(default_names("x", A.n))
    else:
        a = A.element([Fraction(0)] + _parse_vector(args.element, A.n, "--element"))
    if op is log:
        a = a + 1
    r = op(a)
    coords = [_fmt(c) for c in r.coords]
    lines = [f"{label}: {c}" for label, c in zip(A.labels, coords)]
    _emit(args, lines, {"basis": list(A.labels), "coordinates": coords})
    return 0


def cmd_exp(args) -> int:
    return _element_cmd(args, exp)


def cmd_log(args) -> int:
    return _element_cmd(args, log)


def cmd_hilbert(args) -> int:
    A = resolve_algebra(args.algebra, args.order)
    h = A.hilbert_function()
    d = A.nilpotency_index()
    payload = {"dim": A.dim, "nilpotency_index": d, "hilbert_function": h,
               "basis": list(A.labels)}
    lines = [f"dim: {A.dim}", f"nilpotency index: {d}",
             "hilbert function: " + ", ".join(map(str, h))]
    _emit(args, lines, payload)
    return 0


def cmd_groebner(args) -> int:
    pres = resolve_presentation(args.algebra)
    gb = buchberger(pres, args.order)
    payload = {"order": args.order.kind, "variables": list(pres.variables),
               "basis": [str(g) for g in gb]}
    lines = [f"order: {args.order.kind}"] + [f"g{i} = {g}" for i, g in enumerate(gb, 1)]
    try:
        qb = quotient_basis(gb)
    except GroebnerError:
        qb = None
    if qb is not None:
        labels = [monomial_label(m, pres.variables) for m in qb]
        payload["standard_monomials"] = labels
        lines.append("standard monomials: " + ", ".join(labels))
    else:
        payload["standard_monomials"] = None
        lines.append("standard monomials: infinitely many")
    _emit(args, lines, payload)
    return 0


def verify_algebra(A) -> dict:
    """Run every check on one algebra; returns name -> (passed, detail lines)."""
    results = {}
    ax = check_axioms(A)
    results["axioms"] = (ax.ok, ax.lines())
    results["filtration-compatible basis"] = (A.filtration_basis_check(), [])
    if not ax.ok:
        conj = verify_conjugation(A)
        results["conjugation"] = (conj.ok, conj.lines())
        return results
    fs = basic_polynomials(A, allow_incompatible=True)
    results["triangular basic polynomials"] = (is_triangular(fs), fs.lines())
    bs = check_basic_subspace(fs)
    results["basic subspace"] = (bs.ok, bs.lines())
    gl = check_group_law(A)
    results["group law"] = (gl.ok, gl.lines())
    conj = verify_conjugation(A)
    results["conjugation"] = (conj.ok, conj.lines())
    try:
        same = phi_inverse_via_log(A) == invert_triangular(phi_from_algebra(A, allow_incompatible=True))
    except ValueError:
        same = False
    results["log inverse"] = (same, [])
    return results


def cmd_verify(args) -> int:
    if args.all_catalog == bool(args.algebra):
        raise UsageError("give exactly one of --algebra or --all-catalog")
    if args.all_catalog:
        targets = [(e.name, e.algebra) for e in catalog.list_entries()]
    else:
        targets = [(args.algebra, resolve_algebra(args.algebra, args.order, check=False))]
    ok = True
    payload = []
    lines = []
    for name, A in targets:
        res = verify_algebra(A)
        passed = all(p for p, _ in res.values())
        ok &= passed
        payload.append({"algebra": name, "dim": A.dim, "passed": passed,
                        "checks": {k: v[0] for k, v in res.items()}})
        lines.append(f"{name} (dim {A.dim}): {'pass' if passed else 'FAIL'}")
        for check, (p, detail) in res.items():
            lines.append(f"  {check}: {'pass' if p else 'FAIL'}")
            if not p:
                lines.extend("    " + d for d in detail)
    lines.append("all checks passed" if ok else "verification FAILED")
    _emit(args, lines, {"passed": ok, "results": payload})
    return 0 if ok else 1


def cmd_catalog(args) -> int:
    if args.action == "show":
        if not args.name:
            raise UsageError("catalog show needs a NAME")
        try:
            e = catalog.get(args.name)
        except catalog.NotFound as exc:
            raise UsageError(exc.args[0]) from None
        A = e.algebra
        payload = dict(e.to_json(), basis=list(A.labels),
                       hilbert_function=A.hilbert_function(), table=format_table(A))
        # header as comments so the output loads back as a table file
        lines = [f"# name: {e.name}", f"# presentation: {e.presentation}", f"# note: {e.note}",
                 format_table(A).rstrip("\n")]
        _emit(args, lines, payload)
        return 0
    counts = {str(k): v for k, v in catalog.COUNT_TABLE.items()}
    counts[f">={catalog.INFINITE_FROM}"] = "infinite"
    note = ("the catalog is a sample and is not exhaustive for dim >= 4; "
            "counts are the known numbers of isomorphism classes")
    lines = [f"{e.name}\tdim {e.dim}\t{e.presentation}" for e in catalog.list_entries()]
    lines.append("")
    lines.append("isomorphism classes by dimension: "
                 + ", ".join(f"{k}: {v}" for k, v in counts.items()))
    lines.append(f"note: {note}")
    payload = {"entries": [e.to_json() for e in catalog.list_entries()],
               "isomorphism_class_counts": counts, "exhaustive": False, "note": note}
    _emit(args, lines, payload)
    return 0


# -- argument parsing --------------------------------------------------------


def _order(text: str) -> MonomialOrder:
    if text not in ORDERS:
        raise argparse.ArgumentTypeError(f"order must be one of {', '.join(ORDERS)}")
    return MonomialOrder(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--order", type=_order, default=GREVLEX,
                        help="monomial order for Groebner computations (default grevlex)")

    def algebra_arg(p, required=True):
        p.add_argument("--algebra", required=required,
                       help="catalog name, presentation like 'Q[S1]/(S1^3)', or @file")

    parser = argparse.ArgumentParser(
        prog="htaction",
        description="Basic polynomials and additive actions of local algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common], help="parse and print a presentation")
    algebra_arg(p)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("basic-polys", parents=[common], help="basic polynomials f1..fn")
    algebra_arg(p)
    p.add_argument("--allow-incompatible", action="store_true",
                   help="compute even if the basis is not filtration compatible")
    p.set_defaults(func=cmd_basic_polys)

    p = sub.add_parser("action-matrix", parents=[common], help="matrix of exp(y1 s1 + ... + yn sn)")
    algebra_arg(p)
    p.add_argument("--at", help="rational group element y1,..,yn (default symbolic)")
    p.set_defaults(func=cmd_action_matrix)

    for name, func, doc in (("exp", cmd_exp, "exp of c1 s1 + ... + cn sn"),
                            ("log", cmd_log, "log of 1 + c1 s1 + ... + cn sn")):
        p = sub.add_parser(name, parents=[common], help=doc)
        algebra_arg(p)
        p.add_argument("--element", help="c1,..,cn (default symbolic x1..xn)")
        p.set_defaults(func=func)

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert function and nilpotency index")
    algebra_arg(p)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("groebner", parents=[common], help="reduced Groebner basis of a presentation")
    algebra_arg(p)
    p.set_defaults(func=cmd_groebner)

    p = sub.add_parser("verify", parents=[common], help="run every check")
    algebra_arg(p, required=False)
    p.add_argument("--all-catalog", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", parents=[common], help="list or show built-in algebras")
    p.add_argument("action", nargs="?", choices=("list", "show"), default="list")
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        line = exc.text.splitlines()[exc.line - 1] if exc.text.splitlines() else ""
        print(f"  {line}\n  {' ' * (exc.column - 1)}^", file=sys.stderr)
        return 2
    except (UsageError, BasisNotFiltrationCompatible, GroebnerError, AlgebraError, PolyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
