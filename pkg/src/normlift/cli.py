"""Command-line front end.

Every subcommand writes line-delimited JSON records (or short text lines
with ``--format text``) and ends with a summary record.  Exit codes: 0 a
definite positive answer, 1 a definite negative one, 2 inconclusive, 3
usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .errors import NormliftError, ParseError, SearchBudgetExceeded
from .fields import FieldDescriptor
from .poly import SeriesPoly, parse_series
from .series import format_rational

EXIT_POSITIVE, EXIT_NEGATIVE, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)

    def error(self, message):
        raise ParseError(message)


class Reporter:
    def __init__(self, fmt: str = "json", stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def record(self, obj: dict):
        if self.fmt == "json":
            self.stream.write(json.dumps(obj, sort_keys=True, default=str) + "\n")
        else:
            self.stream.write(" ".join(f"{k}={_text(v)}" for k, v in obj.items()) + "\n")
        self.stream.flush()

    def summary(self, command: str, code: int, **extra):
        self.record({"summary": command, "exit": code, **extra})
        return code


def _text(v):
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True, default=str)
    return str(v)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}") from None


def _vector(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise ParseError(f"not an integer vector: {text!r}") from None


def _field(text: str) -> FieldDescriptor:
    try:
        return FieldDescriptor.parse(text)
    except (ValueError, KeyError) as exc:
        raise ParseError(str(exc)) from None


def _names(text: str | None, fallback: int = 1) -> list[str]:
    if text:
        return [n.strip() for n in text.split(",") if n.strip()]
    return list("xyz")[:fallback]


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None


def _load_poly(path: str) -> SeriesPoly:
    obj = _load_json(path)
    try:
        return SeriesPoly.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed polynomial file {path}: {exc}") from None


def _polys(args, field) -> list[SeriesPoly]:
    if getattr(args, "system", None):
        obj = _load_json(args.system)
        try:
            items = obj["polys"] if isinstance(obj, dict) and "polys" in obj else [obj]
            return [SeriesPoly.from_json(p) for p in items]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed system file: {exc}") from None
    if not args.poly:
        raise ParseError("give --poly expressions or --system FILE")
    names = _names(args.vars)
    return [SeriesPoly.parse(p, field, names) for p in args.poly]


def _schedule(nu_max) -> list:
    from .pointfinder import doubling_schedule
    return doubling_schedule(nu_max)


# ---------------------------------------------------------------------------
# commands


def cmd_lift(args, out: Reporter) -> int:
    from .errors import NotSmoothEnough
    from .lifting import PolySystem, smooth_lift, solve_in_R_infty
    field = _field(args.field)
    F = PolySystem.of(_polys(args, field))
    if args.point:
        point = [parse_series(p, field) for p in args.point]
        target = args.precision if args.precision is not None else Fraction(16)
        try:
            y = smooth_lift(F, point, target)
        except NotSmoothEnough as exc:
            out.record({"verdict": "not-smooth", "detail": str(exc)})
            return out.summary("lift", EXIT_NEGATIVE)
        out.record({"verdict": "solved", "point": [c.to_json() for c in y],
                    "text": [str(c) for c in y], "precision": format_rational(target)})
        return out.summary("lift", EXIT_POSITIVE)
    rep = solve_in_R_infty(F, nu_schedule=_schedule(args.nu_max), q_cap=args.q_cap)
    rec = rep.to_json()
    if rep.point:
        rec["text"] = [str(c) for c in rep.point]
    out.record(rec)
    code = {"solved": EXIT_POSITIVE, "no-solution-mod-nu": EXIT_NEGATIVE}.get(rep.verdict, EXIT_INCONCLUSIVE)
    return out.summary("lift", code)


def cmd_solve_hypersurface(args, out: Reporter) -> int:
    from .pointfinder import point_over_laurent
    field = _field(args.field)
    if args.form:
        form = _load_poly(args.form)
    elif args.expr:
        form = SeriesPoly.parse(args.expr, field, _names(args.vars, 3))
    else:
        raise ParseError("give --form FILE or --expr")
    try:
        rep = point_over_laurent(form, nu_schedule=_schedule(args.nu_max), q_cap=args.q_cap)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    cert = rep.certificate()
    if rep.point is not None:
        cert["text"] = [str(c) for c in rep.point.coords]
    out.record(cert)
    code = {"found": EXIT_POSITIVE, "no-solution-mod-nu": EXIT_NEGATIVE}.get(rep.verdict, EXIT_INCONCLUSIVE)
    return out.summary("solve-hypersurface", code)


def _classes(d, texts, length=None):
    from .milnor import UnitClassModD
    vs = [UnitClassModD(d, _vector(t)) for t in texts or ()]
    if length is not None and any(v.m != length for v in vs):
        raise ParseError(f"every class needs {length} entries")
    return vs


def cmd_milnor(args, out: Reporter) -> int:
    action = args.action
    if action == "wedge":
        from .milnor import wedge
        vs = _classes(args.d, args.cls, args.m)
        if not vs:
            raise ParseError("give at least one --class")
        w = wedge(vs)
        out.record({"wedge": w.to_json(), "zero": w.is_zero()})
        return out.summary("milnor wedge", EXIT_POSITIVE)
    if action == "norm":
        from .milnor import KummerExtension, kummer_norm_class, wedge
        if args.u is None:
            raise ParseError("norm needs --u (the radicand class)")
        L = KummerExtension.of(args.d, args.m if args.m is not None else len(_vector(args.u)), _vector(args.u))
        vs = _classes(args.d, args.cls, L.base.n_gens + 1)
        if not vs:
            raise ParseError("give the symbol as --class vectors over the extension")
        n = kummer_norm_class(L, wedge(vs))
        out.record({"extension": L.describe(), "norm": n.to_json()})
        return out.summary("milnor norm", EXIT_POSITIVE)
    if action == "ramif-check":
        return cmd_ramif_check(args, out)
    if action == "witness":
        return cmd_witness(args, out)
    raise ParseError(f"unknown milnor action {action!r}")


def cmd_ramif_check(args, out: Reporter) -> int:
    from .milnor import IteratedLaurentField, LaurentPolynomial, ramification_certify
    if not args.poly:
        raise ParseError("ramif-check needs --poly")
    m = args.m if args.m is not None else 1
    names = tuple(_names(args.names)) if args.names else ()
    K = IteratedLaurentField(m, names)
    f = LaurentPolynomial.parse(args.poly[0], K)
    cert = ramification_certify(f, args.d, assume_irreducible=args.assume_irreducible)
    out.record(cert.to_json())
    return out.summary("ramif-check", EXIT_POSITIVE if cert.certified else EXIT_NEGATIVE)


def cmd_witness(args, out: Reporter) -> int:
    from .milnor import expand_and_verify, norm_witness
    us = _classes(args.d, args.u_list)
    cs = _classes(args.d, args.c_list)
    if not us or not cs:
        raise ParseError("witness needs --unit and --coeff classes")
    m1 = us[0].m
    if args.m is not None and args.m + 1 != m1:
        raise ParseError(f"classes have {m1} entries but --m {args.m} asks for {args.m + 1}")
    dec = norm_witness(args.d, m1, us, cs)
    ok = expand_and_verify(dec)
    out.record({**dec.to_json(), "verified": ok})
    return out.summary("witness", EXIT_POSITIVE if ok else EXIT_NEGATIVE)


def cmd_conic(args, out: Reporter) -> int:
    from .errors import NotFoundWithinBound, RefusedNonMember
    from .localglobal import Conic, global_membership_decide, local_obstructions, verify_witness, witness_search
    try:
        C = Conic(args.a, args.b)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    x = args.x
    if x == 0:
        raise ParseError("x must be nonzero")
    if args.action == "decide":
        member = global_membership_decide(x, C)
        out.record({"x": str(x), "a": str(C.a), "b": str(C.b), "member": member,
                    "obstructions": [str(v) for v in local_obstructions(x, C)]})
        return out.summary("conic decide", EXIT_POSITIVE if member else EXIT_NEGATIVE)
    try:
        w = witness_search(x, C, args.bound)
    except RefusedNonMember as exc:
        out.record({"x": str(x), "verdict": "non-member", "detail": str(exc)})
        return out.summary("conic witness", EXIT_NEGATIVE)
    except NotFoundWithinBound as exc:
        out.record({"x": str(x), "verdict": "inconclusive", "detail": str(exc)})
        return out.summary("conic witness", EXIT_INCONCLUSIVE)
    ok = verify_witness(w, C)
    out.record({**w.to_json(), "verified": ok})
    return out.summary("conic witness", EXIT_POSITIVE if ok else EXIT_INCONCLUSIVE)


def cmd_certify_triple(args, out: Reporter) -> int:
    from .lifting import AssociatedTriple, certify_triple
    field = _field(args.field)
    polys = _polys(args, field)
    N, c, s = _vector(args.triple)
    triple = AssociatedTriple(N, c, s, args.q)
    points = [[parse_series(p, field)] for p in args.point or ()]
    rep = certify_triple(polys, triple, args.samples, args.seed, points=points)
    for o in rep.outcomes:
        rec = o.to_json()
        rec["text"] = [str(p) for p in o.point]
        out.record(rec)
    code = {"pass": EXIT_POSITIVE, "counterexample": EXIT_NEGATIVE}.get(rep.verdict, EXIT_INCONCLUSIVE)
    return out.summary("certify-triple", code, verdict=rep.verdict, samples=len(rep.outcomes))


def cmd_selftest(args, out: Reporter) -> int:
    from .selftest import run_selftest
    records = run_selftest(args.scope, args.seed)
    for suite, name, ok, detail in records:
        out.record({"suite": suite, "check": name, "pass": ok, "detail": detail})
    failed = sum(1 for r in records if not r[2])
    return out.summary("selftest", EXIT_POSITIVE if not failed else EXIT_NEGATIVE,
                       checks=len(records), failed=failed)


# ---------------------------------------------------------------------------
# parser


def _common(defaults: bool = True) -> argparse.ArgumentParser:
    # Subcommands repeat the global flags with suppressed defaults, so a flag
    # given before the subcommand is not overwritten by the subparser.
    def dflt(value):
        return value if defaults else argparse.SUPPRESS
    p = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    p.add_argument("--seed", type=int, default=dflt(0))
    p.add_argument("--workers", type=int, default=dflt(1), help="accepted for compatibility; runs are single-process")
    p.add_argument("--budget", type=int, default=dflt(None))
    p.add_argument("--format", choices=["json", "text"], default=dflt("json"))
    p.add_argument("--precision", type=_rational, default=dflt(None))
    p.add_argument("--nu-max", type=_rational, default=dflt(Fraction(16)))
    p.add_argument("--q-cap", type=int, default=dflt(6))
    p.add_argument("--bound", type=int, default=dflt(50))
    return p


def _poly_options(p):
    p.add_argument("--poly", action="append", help="polynomial expression (repeat for systems)")
    p.add_argument("--system", help="JSON file with a polynomial or {'polys': [...]}")
    p.add_argument("--vars", help="comma-separated variable names (default x)")
    p.add_argument("--field", default="Q", help="Q or Fp:<p>")


def _milnor_options(p):
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--class", dest="cls", action="append", help="residue vector, e.g. 1,0,2")
    p.add_argument("--u", help="radicand class for norm")
    p.add_argument("--poly", action="append", help="monic polynomial in X, e.g. 'X^2 - t'")
    p.add_argument("--names", help="uniformizer names, e.g. t1,t2")
    p.add_argument("--assume-irreducible", action="store_true")
    p.add_argument("--unit", dest="u_list", action="append", help="unit class (repeat)")
    p.add_argument("--coeff", dest="c_list", action="append", help="coefficient class (repeat)")


def build_parser() -> argparse.ArgumentParser:
    common = _common(defaults=False)
    parser = _Parser(prog="normlift", description=__doc__.splitlines()[0], parents=[_common()])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("lift", parents=[common], help="Newton lift a point, or solve in R_infty")
    _poly_options(p)
    p.add_argument("--point", action="append", help="series coordinate (repeat)")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("solve-hypersurface", parents=[common], help="point on a hypersurface over k((t))")
    p.add_argument("--form", help="JSON polynomial file")
    p.add_argument("--expr", help="form as an expression")
    p.add_argument("--vars", help="comma-separated variable names (default x,y,z)")
    p.add_argument("--field", default="Q")
    p.set_defaults(func=cmd_solve_hypersurface)

    p = sub.add_parser("milnor", parents=[common], help="mod-d symbol computations")
    p.add_argument("action", choices=["wedge", "norm", "ramif-check", "witness"])
    _milnor_options(p)
    p.set_defaults(func=cmd_milnor)

    p = sub.add_parser("ramif-check", parents=[common], help="certify that f(0) is not a d-th power")
    _milnor_options(p)
    p.set_defaults(func=cmd_ramif_check)

    p = sub.add_parser("witness", parents=[common], help="norm decomposition of a symbol")
    _milnor_options(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("conic", parents=[common], help="norm groups of z^2 = a x^2 + b y^2")
    p.add_argument("action", choices=["decide", "witness"])
    p.add_argument("--a", type=_rational, required=True)
    p.add_argument("--b", type=_rational, required=True)
    p.add_argument("--x", type=_rational, required=True)
    p.set_defaults(func=cmd_conic)

    p = sub.add_parser("certify-triple", parents=[common], help="falsification run for a lifting triple")
    _poly_options(p)
    p.add_argument("--triple", required=True, help="N,c,s")
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--point", action="append", help="explicit approximate root (one variable)")
    p.set_defaults(func=cmd_certify_triple)

    p = sub.add_parser("selftest", parents=[common], help="run the built-in property checks")
    p.add_argument("scope", nargs="?", default="all")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None, stream=None) -> int:
    fmt = "json"
    out = Reporter(fmt, stream)
    try:
        args = build_parser().parse_args(argv)
        out.fmt = args.format
        return args.func(args, out)
    except ParseError as exc:
        out.record({"error": "usage", "detail": str(exc)})
        return EXIT_USAGE
    except SearchBudgetExceeded as exc:
        out.record({"error": "budget", "detail": str(exc)})
        return EXIT_INCONCLUSIVE
    except NormliftError as exc:
        out.record({"error": type(exc).__name__, "detail": str(exc)})
        return EXIT_NEGATIVE
    except (ValueError, KeyError) as exc:
        out.record({"error": "usage", "detail": str(exc)})
        return EXIT_USAGE


def run() -> None:
    try:
        code = main()
    except BrokenPipeError:
        # downstream reader closed early (e.g. piped into head)
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = 1
    sys.exit(code)


if __name__ == "__main__":
    run()
