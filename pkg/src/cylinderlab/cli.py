"""Command-line interface.

Exit codes: 0 success, 1 the checked predicate is false (not divisible, not in
span, certificate rejected, precondition of a lift fails), 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import __version__
from .decompose import DIFFS, LINES, PLANES, NotInSpan, solve_in_span, span_family
from .errors import (
    CylinderLabError, InvalidModulus, LiftObstruction, PreconditionViolated, ScaleRefused,
)
from .experiments import exhaustive_scc_check, min_support_search
from .generate import random_cylinder, random_divisible, random_line, random_multiset, random_plane
from .geometry import check_prime
from .lift import lift_multiset, lift_set, verify_certificate
from .serialize import (
    SchemaError, certificate_from_json, certificate_to_json, combination_to_json, dumps,
    report_to_json, weight_from_json, weight_to_json,
)
from .structure import contains_full_line, determined_directions, is_cylinder, skew_lines_construction
from .weights import WeightZ, is_p_divisible

SKEW_NOTE = ("the construction is described as having size p(p-1) and, two sentences "
             "later, p(p-2); the signed combination evaluates to total weight p(p-2)")


class UsageError(Exception):
    pass


def _load(source):
    text = source.strip()
    if not text.startswith("{"):
        if text == "-":
            text = sys.stdin.read()
        else:
            try:
                with open(source) as fh:
                    text = fh.read()
            except OSError as exc:
                raise UsageError(f"cannot read {source}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {source if len(source) < 60 else 'input'}: {exc}") \
            from None


def _seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get("CYLINDERLAB_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"CYLINDERLAB_SEED must be an integer, got {env!r}") from None


def _int_list(text, what):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"--{what} expects comma-separated integers, got {text!r}") from None


def _weight_arg(args, kind=WeightZ):
    w = weight_from_json(_load(args.input), kind)
    if args.p is not None and args.p != w.p:
        raise UsageError(f"--p {args.p} does not match input p={w.p}")
    return w


def cmd_check(args):
    report = is_p_divisible(_weight_arg(args))
    out = {"divisible": report.divisible}
    if not report.divisible:
        out["witness"] = report.witness.to_text()
        out["sum"] = report.witness_sum
    return out, 0 if report.divisible else 1


def cmd_decompose(args):
    w = _weight_arg(args)
    result = solve_in_span(w.reduce_mod_p(), span_family(args.family, w.p))
    return combination_to_json(result), 1 if isinstance(result, NotInSpan) else 0


def cmd_lift(args):
    w = _weight_arg(args)
    cert = lift_set(w) if args.kind == "set" else lift_multiset(w)
    return certificate_to_json(cert), 0


def cmd_verify(args):
    ok = verify_certificate(certificate_from_json(_load(args.input)))
    return ok, 0 if ok else 1


def cmd_analyze(args):
    w = _weight_arg(args)
    p = w.p
    out = {"p": p, "total_weight": w.total_weight(), "support": w.support_size(),
           "is_set": w.is_set(), "divisible": is_p_divisible(w).divisible}
    line = contains_full_line(w)
    out["full_line"] = line.to_text() if line else None
    if w.is_set():
        rep = determined_directions(w)
        out["determined_directions"] = len(rep.determined)
        out["undetermined"] = [list(d) for d in sorted(rep.undetermined)]
        if w.total_weight() == p * p:
            d = is_cylinder(w)
            out["cylinder_direction"] = list(d) if d else None
    return out, 0


def cmd_scc(args):
    report = exhaustive_scc_check(args.p, workers=args.workers)
    return report_to_json(report, timing=args.timing), 0 if not report.violations else 1


def cmd_skew(args):
    p = check_prime(args.p)
    bij = _int_list(args.bijection, "bijection") if args.bijection else None
    w = skew_lines_construction(p, bij)
    line = contains_full_line(w)
    return {"weight": weight_to_json(w), "total_weight": w.total_weight(),
            "support": w.support_size(), "is_set": w.is_set(),
            "full_line": line.to_text() if line else None, "note": SKEW_NOTE}, 0


def cmd_minsearch(args):
    p = check_prime(args.p)
    limit = args.max_support if args.max_support is not None else p * p
    report = min_support_search(p, limit, budget=args.budget, seed=_seed(args))
    return report_to_json(report, timing=args.timing), 0


def cmd_generate(args):
    p = check_prime(args.p)
    rng = random.Random(_seed(args))
    if args.kind == "cylinder":
        w = random_cylinder(p, rng, _int_list(args.dir, "dir") if args.dir else None)
        assert is_cylinder(w) is not None
    elif args.kind == "plane":
        w = random_plane(p, rng)
    elif args.kind == "line":
        w = random_line(p, rng)
        assert not is_p_divisible(w).divisible
    elif args.kind == "multiset":
        w = random_multiset(p, rng, moves=args.terms or 6)
    else:
        w = random_divisible(p, rng, terms=args.terms, plane_shift=args.plane_shift)
    if args.kind != "line":
        assert is_p_divisible(w).divisible
    return weight_to_json(w), 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "pretty"), default="json")
    common.add_argument("--output", "-o", help="write the result here instead of stdout")
    common.add_argument("--seed", type=int, default=None,
                        help="random seed (fallback: $CYLINDERLAB_SEED, then 0)")

    parser = argparse.ArgumentParser(
        prog="cylinderlab", description="p-divisible point sets in F_p^3.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, needs_input=True):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        if needs_input:
            sp.add_argument("input", help="JSON file, '-' for stdin, or inline JSON")
            sp.add_argument("--p", type=int, default=None, help="expected modulus")
        sp.set_defaults(func=func)
        return sp

    add("check", cmd_check, "test p-divisibility")
    sp = add("decompose", cmd_decompose, "write a weight over a generator family")
    sp.add_argument("--family", choices=(PLANES, LINES, DIFFS), default=DIFFS)
    sp = add("lift", cmd_lift, "integer certificate for a set or multiset of size p^2",
             needs_input=False)
    sp.add_argument("kind", choices=("set", "multiset"))
    sp.add_argument("input", help="JSON file, '-' for stdin, or inline JSON")
    sp.add_argument("--p", type=int, default=None, help="expected modulus")
    add("verify", cmd_verify, "check a certificate")
    add("analyze", cmd_analyze, "cylinder / direction / full-line report")

    sp = add("scc", cmd_scc, "exhaustive strong cylinder check (p <= 3)", needs_input=False)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--timing", action="store_true", help="include elapsed seconds")

    sp = add("skew", cmd_skew, "skew-lines construction", needs_input=False)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--bijection", help="comma-separated permutation of 0..p-1")

    sp = add("minsearch", cmd_minsearch, "heuristic small-support search", needs_input=False)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--max-support", type=int, default=None)
    sp.add_argument("--budget", type=int, default=2000)
    sp.add_argument("--timing", action="store_true")

    sp = add("generate", cmd_generate, "emit a test instance", needs_input=False)
    sp.add_argument("kind", choices=("cylinder", "plane", "line", "random-divisible", "multiset"))
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--dir", help="direction for cylinders, e.g. 0,0,1")
    sp.add_argument("--terms", type=int, default=None)
    sp.add_argument("--plane-shift", action="store_true")
    return parser


def _emit(result, args):
    text = dumps(result, pretty=args.format == "pretty")
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result, code = args.func(args)
    except (SchemaError, UsageError, ScaleRefused, InvalidModulus) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PreconditionViolated as exc:
        out = {"error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc.witness, tuple) and exc.witness and hasattr(exc.witness[0], "to_text"):
            out["witness"] = exc.witness[0].to_text()
            out["sum"] = exc.witness[1]
        _emit(out, args)
        return 1
    except LiftObstruction as exc:
        _emit({"error": "LiftObstruction", "message": str(exc)}, args)
        return 1
    except CylinderLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(result, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
