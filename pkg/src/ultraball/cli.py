"""Command-line front end.

Subcommands: ``eval``, ``roundtrip``, ``check-filter``, ``classify-z``,
``canonicalize``, ``tree``.  All numerics are rationals in p/q form.

Exit status contract: 0 on success or a passing verification, 1 on a
failing verification or a library error (the message carries a
machine-readable code, ``error[<code>] ...``), 2 on usage, syntax or
semantic errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .ballspace import FormalBall, Space, check_R_good
from .classify import (
    BUILTIN_FIXTURES,
    canonicalize_trivial,
    classify_integer_seminorm,
    load_fixture,
    RadiusAndCenter,
    RadiusOnly,
    Undetermined,
)
from .errors import ParseError, SemanticError, UltraballError
from .exactnum import DEFAULT_DEPTH, to_exact, INF
from .fields import PAdicQ, TAdicFunctionField, TrivialQ, ValuedField, in_K_R
from .parsing import (
    parse_ball,
    parse_filter,
    parse_poly,
    parse_rational,
    parse_series,
)
from .roundtrip import verify_roundtrip_filter, verify_roundtrip_seminorm
from .seminorms import (
    FilterSeminorm,
    LinPoly,
    filter_seminorm_poly,
    hat_ball_poly,
    series_enclosure,
)
from .trees import describe, emit_tree, to_dot, to_records


def _build_field(spec: str) -> ValuedField:
    if spec == "trivial":
        return TrivialQ()
    if spec.startswith("padic:"):
        return PAdicQ(int(spec.split(":", 1)[1]))
    if spec.startswith("tadic:"):
        return TAdicFunctionField(parse_rational(spec.split(":", 1)[1]))
    raise SemanticError(
        f"unknown field {spec!r}; expected trivial, padic:P or tadic:B"
    )


def _space(args: argparse.Namespace) -> Space:
    return Space(_build_field(args.field), parse_rational(args.R))


def _add_context(sub: argparse.ArgumentParser, need_field: bool = True) -> None:
    if need_field:
        sub.add_argument("--field", required=True,
                         help="trivial | padic:P | tadic:B")
        sub.add_argument("--R", required=True, help="convergence radius, rational")
    sub.add_argument("--depth", type=int, default=DEFAULT_DEPTH,
                     help=f"probe depth (default {DEFAULT_DEPTH})")
    sub.add_argument("--seed", type=int, default=0, help="probe selection seed")
    sub.add_argument("--format", choices=("text", "records"),
                     default="text", help="output format")


def _emit(args: argparse.Namespace, kind: str, input_: str, value: str,
          status: str, text: str) -> None:
    if args.format == "records":
        print(f"{kind}\t{input_}\t{value}\t{status}")
    else:
        print(text)


def _cmd_eval(args: argparse.Namespace) -> int:
    space = _space(args)
    if bool(args.filter) == bool(args.ball):
        raise SemanticError("eval needs exactly one of --filter or --ball")
    if bool(args.poly) == bool(args.series):
        raise SemanticError("eval needs exactly one of --poly or --series")

    operand = args.poly or args.series
    if args.poly:
        poly = parse_poly(args.poly, space.field)
    else:
        series = parse_series(args.series, space.field)

    if args.ball:
        ball = parse_ball(args.ball, space)
        if args.poly:
            value = hat_ball_poly(space.field, ball, poly)
            _emit(args, "eval", f"{operand} @ {args.ball}", str(value), "exact",
                  str(value))
            return 0
        v = hat_ball_poly(space.field, ball, series.coeffs)
        lo = max(Fraction(0), v - series.tail_bound)
        hi = v + series.tail_bound
        _emit(args, "eval", f"{operand} @ {args.ball}", f"[{lo}, {hi}]",
              "interval", f"[{lo}, {hi}]")
        return 0

    filt = parse_filter(args.filter, space)
    if args.series:
        lo, hi = series_enclosure(filt, series, args.depth)
        _emit(args, "eval", f"{operand} @ {args.filter}", f"[{lo}, {hi}]",
              "interval", f"[{lo}, {hi}]")
        return 0
    value = filter_seminorm_poly(filt, poly)
    exact = to_exact(value, args.depth)
    if exact is not None:
        _emit(args, "eval", f"{operand} @ {args.filter}", str(exact), "exact",
              str(exact))
        return 0
    bound = value.bound_at(args.depth)
    shown = "+inf" if bound is INF else str(bound)
    _emit(args, "eval", f"{operand} @ {args.filter}", shown, "bound",
          f"<= {shown} (bound at depth {args.depth}, no stabilization certificate)")
    return 0


def _probe_elements(space: Space) -> list:
    field = space.field
    out = [field.zero()]
    for c in (Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2)):
        e = field.element_from_rational(c)
        if in_K_R(field, e, space.R) and not any(field.eq(e, o) for o in out):
            out.append(e)
    if isinstance(field, TAdicFunctionField) and in_K_R(field, field.t, space.R):
        out.append(field.t)
    return out


def _cmd_roundtrip(args: argparse.Namespace) -> int:
    space = _space(args)
    filt = parse_filter(args.filter, space)
    field = space.field
    x = FilterSeminorm(filt)

    centers = _probe_elements(space)
    from .ballspace import DiscPoint

    if isinstance(filt.generator, DiscPoint):
        c0 = filt.generator.center
        if not any(field.eq(c0, c) for c in centers):
            centers.append(c0)
    one = field.one()
    two = field.element_from_rational(Fraction(2))
    lins = [LinPoly(one, c) for c in centers]
    lins += [LinPoly(two, c) for c in centers[:3]]
    lins.append(LinPoly(field.zero(), one))
    rot = args.seed % max(1, len(lins))
    lins = lins[rot:] + lins[:rot]
    thresholds = [space.R * Fraction(n, 8) for n in (1, 2, 4, 8, 12, 16, 24)]
    probes = [(f, q) for f in lins for q in thresholds]

    rep_x = verify_roundtrip_seminorm(x, probes, args.depth)
    balls = [
        FormalBall(c, q)
        for c in centers
        for q in thresholds
    ]
    rep_f = verify_roundtrip_filter(filt, balls, args.depth)

    ok = rep_x.ok and rep_f.ok
    status = "pass" if ok else "fail"
    _emit(args, "roundtrip-seminorm", args.filter,
          f"disagreements={len(rep_x.disagreements)}/{rep_x.probes_checked}",
          "pass" if rep_x.ok else "fail",
          f"roundtrip seminorm->filter->seminorm: "
          f"{'PASS' if rep_x.ok else 'FAIL'} ({rep_x.probes_checked} probes)")
    _emit(args, "roundtrip-filter", args.filter,
          f"disagreements={len(rep_f.disagreements)}/{rep_f.probes_checked}",
          "pass" if rep_f.ok else "fail",
          f"roundtrip filter->seminorm->filter: "
          f"{'PASS' if rep_f.ok else 'FAIL'} ({rep_f.probes_checked} probes)")
    for d in rep_x.disagreements + rep_f.disagreements:
        print(f"  disagreement: {d.probe} (direct={d.lhs}, induced={d.rhs})")
    return 0 if ok else 1


def _cmd_check_filter(args: argparse.Namespace) -> int:
    space = _space(args)
    filt = parse_filter(args.filter, space)
    report = check_R_good(filt, args.depth, args.samples)
    for clause in report.clauses:
        status = "ok" if clause.ok else "FAIL"
        detail = f" ({clause.detail})" if clause.detail else ""
        _emit(args, "filter-law", clause.clause, status,
              "pass" if clause.ok else "fail",
              f"{clause.clause}: {status}{detail}")
    if report.unverified_tail:
        print(f"note: {report.unverified_tail} prefix entries await a smaller "
              f"radius beyond the prefix")
    print("filter laws: " + ("PASS" if report.ok else "FAIL"))
    return 0 if report.ok else 1


def _cmd_classify_z(args: argparse.Namespace) -> int:
    oracle = load_fixture(args.fixture)
    result = classify_integer_seminorm(
        oracle, args.primes, parse_rational(args.precision)
    )
    _emit(args, "classify-z", args.fixture, str(result),
          "ok" if result.kind != "unclassifiable" else "fail", str(result))
    return 0 if result.kind != "unclassifiable" else 1


def _cmd_canonicalize(args: argparse.Namespace) -> int:
    space = _space(args)
    filt = parse_filter(args.filter, space)
    form = canonicalize_trivial(filt, args.depth)
    if isinstance(form, RadiusOnly):
        r = to_exact(form.radius, args.depth)
        shown = str(r) if r is not None else f"<= {form.radius.bound_at(args.depth)}"
        text = f"RadiusOnly({shown})"
    elif isinstance(form, RadiusAndCenter):
        r = to_exact(form.radius, args.depth)
        shown = str(r) if r is not None else f"<= {form.radius.bound_at(args.depth)}"
        center = space.field.format_element(form.center)
        text = f"RadiusAndCenter({shown}, {center})"
    else:
        assert isinstance(form, Undetermined)
        text = f"undetermined at depth {form.depth}"
    _emit(args, "canonicalize", args.filter, text, "ok", text)
    return 0


def _cmd_tree(args: argparse.Namespace) -> int:
    if args.kind == "z":
        primes = [int(p) for p in args.primes.split(",") if p]
        tree = emit_tree("spec_Z", primes=primes)
        title = "spectrum of the integers"
    else:
        R = parse_rational(args.R)
        centers = [str(i) for i in range(args.branches)]
        if R < 1:
            tree = emit_tree("trivial_R_lt_1", R=R)
        else:
            tree = emit_tree("trivial_R_geq_1", R=R, centers=centers)
        title = f"trivially valued base, R = {R}"

    if args.format == "dot":
        sys.stdout.write(to_dot(tree))
    elif args.format == "records":
        sys.stdout.write(to_records(tree))
    else:
        sys.stdout.write(describe(tree))

    if args.out:
        with open(args.out + ".dot", "w", encoding="utf-8") as fh:
            fh.write(to_dot(tree))
        with open(args.out + ".tsv", "w", encoding="utf-8") as fh:
            fh.write(to_records(tree))
        from .figures import render_tree

        render_tree(tree, args.out + ".png", title=title)
        print(f"wrote {args.out}.dot, {args.out}.tsv, {args.out}.png",
              file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ultraball",
        description="Exact seminorm evaluation and spectrum classification "
                    "over non-Archimedean fields.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("eval", help="evaluate a seminorm on a polynomial or series")
    _add_context(p)
    p.add_argument("--filter", help="disc(k, r) or chain[B(q; k), ...]")
    p.add_argument("--ball", help="B(q; k)")
    p.add_argument("--poly", help="poly[c0, c1, ...] or 3*(T-1)*(T+1)")
    p.add_argument("--series", help="series[a0, ...; tail=RAT]")
    p.set_defaults(func=_cmd_eval)

    p = subs.add_parser("roundtrip", help="verify the seminorm/filter round-trip")
    _add_context(p)
    p.add_argument("--filter", required=True)
    p.set_defaults(func=_cmd_roundtrip)

    p = subs.add_parser("check-filter", help="verify the filter laws on a prefix")
    _add_context(p)
    p.add_argument("--filter", required=True)
    p.add_argument("--samples", type=int, default=8)
    p.set_defaults(func=_cmd_check_filter)

    p = subs.add_parser("classify-z", help="classify an integer seminorm oracle")
    _add_context(p, need_field=False)
    p.add_argument("--fixture", required=True,
                   help=f"fixture file or one of {sorted(BUILTIN_FIXTURES)}")
    p.add_argument("--primes", type=int, default=50)
    p.add_argument("--precision", default="1/1000000")
    p.set_defaults(func=_cmd_classify_z)

    p = subs.add_parser("canonicalize",
                        help="canonical form of a filter over a trivially valued field")
    _add_context(p)
    p.add_argument("--filter", required=True)
    p.set_defaults(func=_cmd_canonicalize)

    p = subs.add_parser("tree", help="emit spectrum tree data (DOT, records, figure)")
    p.add_argument("--kind", choices=("z", "trivial"), default="trivial")
    p.add_argument("--field", default="trivial")
    p.add_argument("--R", default="1")
    p.add_argument("--primes", default="2,3,5")
    p.add_argument("--branches", type=int, default=3,
                   help="sampled sub-unit branches (presentation only)")
    p.add_argument("--format", choices=("text", "dot", "records"), default="text")
    p.add_argument("--out", help="file prefix; writes .dot, .tsv and .png")
    p.set_defaults(func=_cmd_tree)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, SemanticError) as err:
        print(f"error[{err.code}] {err}", file=sys.stderr)
        return 2
    except UltraballError as err:
        print(f"error[{err.code}] {err}", file=sys.stderr)
        return 1
    except ValueError as err:
        print(f"error[value] {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
