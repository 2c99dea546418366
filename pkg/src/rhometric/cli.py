"""Command-line front end.

Exit status: 0 success, 2 unreadable input, 3 a space fails the metric
axioms, 4 an enumeration cap was exceeded, 5 a property check failed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from decimal import Decimal, localcontext
from pathlib import Path
from typing import Sequence

from . import io as rio
from .constructions import MAP_CAP, PRODUCT_CAP, exponential, product, quotient, tensor
from .extended_reals import ISO_PRECISION, exp_iso, ln_iso, parse_ext, render_ext
from .paths import LineKind, PLPath, pl_valuation, step_valuation
from .properties import DEFAULT_SEED, run_all
from .space import AxiomError, CapExceeded, classify, require_valid, validate
from .symmetry import coreflective_preorder, coreflective_sym, reflective_preorder, reflective_sym
from .topology import coreflective_topology, future_topology, past_topology, reflective_topology

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_CAP, EXIT_PROPERTY = 0, 2, 3, 4, 5
CAP_ENV = "RHOMETRIC_CAP"


class _InputError(Exception):
    pass


def _read(arg: str, inline_starts: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    if arg.lstrip()[:1] in inline_starts:
        return arg
    try:
        return Path(arg).read_text()
    except OSError as exc:
        raise _InputError(f"cannot read {arg}: {exc.strerror}") from None


def _spaces(args, count: int | None = None):
    files = args.space or []
    if count is not None and len(files) != count:
        raise _InputError(f"expected {count} --space argument(s), got {len(files)}")
    if not files:
        raise _InputError("at least one --space is required")
    return [rio.load_space(_read(f, "{")) for f in files]


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _default_cap() -> int:
    env = os.environ.get(CAP_ENV)
    if env is None:
        return PRODUCT_CAP
    try:
        return int(env)
    except ValueError:
        raise _InputError(f"{CAP_ENV} must be an integer") from None


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    (X,) = _spaces(args, 1)
    bad = validate(X)
    if args.json:
        _emit({"valid": not bad, "violations": [str(v) for v in bad]})
    elif bad:
        for v in bad:
            print(v)
    else:
        print("valid")
    return EXIT_INVALID if bad else EXIT_OK


def cmd_classify(args) -> int:
    (X,) = _spaces(args, 1)
    prof = classify(require_valid(X))
    out = {
        "positive": prof.positive,
        "finite_valued": prof.finite_valued,
        "symmetric": prof.symmetric,
        "linear": prof.linear,
        "affordable": prof.affordable,
        # space order, not set order, so the report is byte-stable
        "flat_points": [rio.label_to_json(p) for p in X.points if p in prof.flat_points],
        "regular_points": [rio.label_to_json(p) for p in X.points if p in prof.regular_points],
    }
    if args.json:
        _emit(out)
    else:
        for k, v in out.items():
            print(f"{k}={json.dumps(v)}")
    return EXIT_OK


def cmd_symmetrize(args) -> int:
    (X,) = _spaces(args, 1)
    fn = reflective_sym if args.mode == "reflective" else coreflective_sym
    sys.stdout.write(rio.dump_space(fn(X)))
    return EXIT_OK


def cmd_quotient(args) -> int:
    (X,) = _spaces(args, 1)
    if not args.rel:
        raise _InputError("quotient needs --rel")
    rel = rio.relation_from_json(_read(args.rel, "["))
    res = quotient(X, rel)
    if args.witnesses:
        wit = [
            {
                "from": rio.label_to_json(res.space.points[a]),
                "to": rio.label_to_json(res.space.points[b]),
                "chain": [[rio.label_to_json(x), rio.label_to_json(y)] for x, y in w.steps],
                "total": rio.entry_to_json(w.total),
            }
            for (a, b), w in sorted(res.witnesses.items())
        ]
        _emit({"space": rio.space_to_json(res.space), "witnesses": wit})
    else:
        sys.stdout.write(rio.dump_space(res.space))
    return EXIT_OK


def cmd_product(args) -> int:
    sys.stdout.write(rio.dump_space(product(_spaces(args), cap=args.cap or _default_cap())))
    return EXIT_OK


def cmd_tensor(args) -> int:
    sys.stdout.write(rio.dump_space(tensor(_spaces(args), cap=args.cap or _default_cap())))
    return EXIT_OK


def cmd_exponential(args) -> int:
    Y, Z = _spaces(args, 2)
    sys.stdout.write(rio.dump_space(exponential(Y, Z, cap=args.cap or MAP_CAP)))
    return EXIT_OK


_TOPOLOGIES = {
    "future": future_topology,
    "past": past_topology,
    "reflective": reflective_topology,
    "coreflective": coreflective_topology,
}


def cmd_topology(args) -> int:
    (X,) = _spaces(args, 1)
    mode = args.mode or "future"
    _emit(rio.topology_to_json(_TOPOLOGIES[mode](X)))
    return EXIT_OK


def cmd_preorder(args) -> int:
    (X,) = _spaces(args, 1)
    mode = args.mode or "reflective"
    if mode not in ("reflective", "coreflective"):
        raise _InputError("preorder --mode is reflective or coreflective")
    fn = reflective_preorder if mode == "reflective" else coreflective_preorder
    _emit(rio.preorder_to_json(fn(X)))
    return EXIT_OK


def cmd_valuate(args) -> int:
    if not args.path:
        raise _InputError("valuate needs --path")
    text = _read(args.path, "")
    space = _spaces(args, 1)[0] if args.space else None
    path = rio.load_path(text, space, args.kind or "rho")
    report = pl_valuation(path) if isinstance(path, PLPath) else step_valuation(path)
    if args.json:
        _emit(report.as_dict())
    else:
        sys.stdout.write(report.render())
    return EXIT_OK


def cmd_properties(args) -> int:
    only = None
    if args.only:
        try:
            only = {int(x) for x in args.only.split(",")}
        except ValueError:
            raise _InputError("--only takes comma-separated criterion numbers") from None
    results = run_all(args.seed if args.seed is not None else DEFAULT_SEED, only)
    if args.json:
        _emit([{"number": r.number, "name": r.name, "passed": r.passed, "detail": r.detail} for r in results])
    else:
        for r in results:
            print(r.line(timings=args.timings))
    return EXIT_OK if all(r.passed for r in results) else EXIT_PROPERTY


def cmd_iso(args) -> int:
    try:
        x = parse_ext(args.value)
    except ValueError as exc:
        raise _InputError(str(exc)) from None
    res = exp_iso(x) if args.direction == "exp" else ln_iso(x)
    if res.exact or not res.value.is_finite:
        print(render_ext(res.value))
    else:
        q = res.value.value
        with localcontext() as ctx:
            ctx.prec = ISO_PRECISION
            print(f"{Decimal(q.numerator) / Decimal(q.denominator)} (approximate)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rhometric", description="Finite real-valued metric spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=fn)
        p.add_argument("--space", action="append", metavar="FILE", help="space file, inline JSON, or - for stdin")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    add("validate", cmd_validate, "check the metric axioms")
    add("classify", cmd_classify, "positivity, finiteness, symmetry, linearity, flat points")
    p = add("symmetrize", cmd_symmetrize, "reflective or coreflective symmetrization")
    p.add_argument("--mode", choices=("reflective", "coreflective"), default="reflective")
    p = add("quotient", cmd_quotient, "quotient by an equivalence relation")
    p.add_argument("--rel", metavar="FILE", help="relation file (JSON list of classes)")
    p.add_argument("--witnesses", action="store_true", help="include minimising chains")
    for name, fn, text in (("product", cmd_product, "cartesian product (max metric)"), ("tensor", cmd_tensor, "tensor product (sum metric)")):
        p = add(name, fn, text)
        p.add_argument("--cap", type=int, help=f"carrier size cap (default ${CAP_ENV} or {PRODUCT_CAP})")
    p = add("exponential", cmd_exponential, "space of 1-Lipschitz maps Y -> Z (give Y then Z)")
    p.add_argument("--cap", type=int, help=f"candidate map cap (default {MAP_CAP})")
    p = add("topology", cmd_topology, "open sets of a metric topology")
    p.add_argument("--mode", choices=tuple(_TOPOLOGIES), default="future")
    p = add("preorder", cmd_preorder, "reflective or coreflective preorder")
    p.add_argument("--mode", choices=("reflective", "coreflective"), default="reflective")
    p = add("valuate", cmd_valuate, "valuation report of a path")
    p.add_argument("--path", metavar="FILE", help="CSV path file (t,y or t,point)")
    p.add_argument("--kind", choices=[k.value for k in LineKind], default="rho", help="target line for t,y paths")
    p = add("properties", cmd_properties, "run the acceptance property suite")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.add_argument("--timings", action="store_true", help="append wall-clock seconds (output no longer byte-stable)")

    p = sub.add_parser("iso", help="exp/ln isomorphism (approximate for finite non-trivial values)")
    p.set_defaults(func=cmd_iso)
    p.add_argument("direction", choices=("exp", "ln"))
    p.add_argument("value")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (_InputError, rio.ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except AxiomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for v in exc.violations:
            print(f"  {v}", file=sys.stderr)
        return EXIT_INVALID
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
