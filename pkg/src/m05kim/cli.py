"""Command-line interface: ``m05kim <group> <command> [options]``."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .padic import PadicContext, rational_reconstruct


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text}") from exc


def _emit(obj, as_json: bool, out=None):
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    else:
        for k, v in obj.items():
            out.write(f"{k}: {v}\n")


# geom -------------------------------------------------------------------------

def cmd_kernel_check(args) -> int:
    from .geometric import kernel_check

    rep = kernel_check(args.trials, args.seed)
    _emit(rep.as_dict(), args.json)
    return 0 if rep.all_zero else 1


def cmd_certify(args) -> int:
    from .geometric import certify

    _emit(certify(args.trials, args.seed).as_dict(), args.json)
    return 0


# arith ------------------------------------------------------------------------

def cmd_dictionary(args) -> int:
    from .periods import DictionaryMismatch, build_period_dictionary

    try:
        d = build_period_dictionary(PadicContext(args.p, args.prec), constants=args.constants)
    except DictionaryMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = d.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(d.sha256())
    else:
        print(text)
    return 0


# padic ------------------------------------------------------------------------

def cmd_li(args) -> int:
    from .polylog import padic_li

    ctx = PadicContext(args.p, args.prec)
    print(padic_li(args.n, ctx(args.z)).digit_string())
    return 0


def cmd_zeta(args) -> int:
    from .polylog import padic_zeta

    print(padic_zeta(args.n, PadicContext(args.p, args.prec)).digit_string())
    return 0


def cmd_reconstruct(args) -> int:
    ctx = PadicContext(args.p, args.prec)
    if args.digits is not None:
        unit = 0
        for d in reversed([int(x) for x in args.digits.split(",")]):
            unit = unit * args.p + d
        x = ctx(unit) * Fraction(args.p) ** args.valuation
    else:
        x = ctx(args.value)
    print(rational_reconstruct(x))
    return 0


# points / kim -------------------------------------------------------------------

def cmd_enumerate(args) -> int:
    from .pipeline import enumerate_x_points, enumerate_y_points, x_points_oracle, y_points_oracle

    xs = x_points_oracle() if args.oracle else enumerate_x_points()
    ys = y_points_oracle() if args.oracle else enumerate_y_points()
    _emit({"x_points": [str(x) for x in xs], "y_points": [[str(p.z1), str(p.z2)] for p in ys],
           "x_count": len(xs), "y_count": len(ys)}, True)
    return 0


def _config(args):
    from .pipeline import RunConfig

    base = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            base = json.load(fh)
    for key in ("p", "precision", "slack", "seed", "jobs"):
        val = getattr(args, key, None)
        if val is not None:
            base[key] = val
    if getattr(args, "out", None):
        base["output"] = args.out
    return RunConfig.from_json(json.dumps(base))


def cmd_evaluate(args) -> int:
    from .pipeline import IntegralPoint, run

    config = _config(args)
    points = None if args.all_integral else [IntegralPoint(*args.point)]
    rep = run(config, points, with_controls=args.all_integral)
    print(rep.to_json())
    return 0 if rep.points_pass else 1


def cmd_report(args) -> int:
    from .pipeline import run

    rep = run(_config(args))
    print(json.dumps({"overall_pass": rep.overall_pass, "output": args.out}))
    return 0 if rep.overall_pass else 1


def cmd_verify(args) -> int:
    from .acceptance import run_all

    echo = None if args.json else print
    results = run_all(echo)
    if args.json:
        print(json.dumps([r.as_dict() for r in results], indent=2))
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="m05kim")
    groups = parser.add_subparsers(dest="group", required=True)

    geom = groups.add_parser("geom").add_subparsers(dest="command", required=True)
    p = geom.add_parser("kernel-check")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_kernel_check)
    p = geom.add_parser("certify")
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_certify)

    arith = groups.add_parser("arith").add_subparsers(dest="command", required=True)
    p = arith.add_parser("dictionary")
    p.add_argument("--p", type=int, default=13)
    p.add_argument("--prec", type=int, default=20)
    p.add_argument("--constants", choices=("recomputed", "reference"), default="recomputed")
    p.add_argument("--out")
    p.set_defaults(func=cmd_dictionary)

    padic = groups.add_parser("padic").add_subparsers(dest="command", required=True)
    p = padic.add_parser("li")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--z", type=_fraction, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--prec", type=int, default=20)
    p.set_defaults(func=cmd_li)
    p = padic.add_parser("zeta")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--prec", type=int, default=20)
    p.set_defaults(func=cmd_zeta)
    p = padic.add_parser("reconstruct")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--prec", type=int, default=20)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--value", type=_fraction, help="round-trip a rational through Z_p")
    src.add_argument("--digits", help="comma-separated unit digits, low to high")
    p.add_argument("--valuation", type=int, default=0)
    p.set_defaults(func=cmd_reconstruct)

    points = groups.add_parser("points").add_subparsers(dest="command", required=True)
    p = points.add_parser("enumerate")
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    kim = groups.add_parser("kim").add_subparsers(dest="command", required=True)
    for name, func in (("evaluate", cmd_evaluate), ("report", cmd_report)):
        p = kim.add_parser(name)
        p.add_argument("--config", help="JSON file with p, precision, slack, seed")
        p.add_argument("--p", type=int)
        p.add_argument("--prec", dest="precision", type=int)
        p.add_argument("--slack", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--jobs", type=int)
        if name == "evaluate":
            which = p.add_mutually_exclusive_group(required=True)
            which.add_argument("--all-integral", action="store_true")
            which.add_argument("--point", nargs=2, type=_fraction, metavar=("Z1", "Z2"))
            p.add_argument("--out")
        else:
            p.add_argument("--out", required=True)
        p.set_defaults(func=func)

    verify = groups.add_parser("verify").add_subparsers(dest="command", required=True)
    p = verify.add_parser("all")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
