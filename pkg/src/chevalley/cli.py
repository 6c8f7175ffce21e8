"""Batch command-line surface with machine-readable reports.

Subcommands: verify, generic, stable, chambers, reduce, decompose, symbol.
All numbers in reports are exact rational (or Gaussian-rational) strings;
output is byte-stable for a fixed invocation.  Exit status: 0 when every
requested check passed (or the requested analysis completed), 1 when a
verification or reduction failed, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .arrangements import (ArrangementError, Plane, find_stable_element,
                           is_generic, lyapunov_hyperplanes, weyl_chambers)
from .cycles import (CycleError, RestrictedSystem, StandardSystem, Word,
                     reduce_cycle)
from .generators import GeneratorError, GroupModel
from .matrices import MatrixError
from .relations import (DEFAULT_GRID, GRID, REGIMES, SUITES, RelationError,
                        decompose_commutator, run_suite)
from .roots import Root, RootError, build_root_system, standard_sl_roots
from .scalars import ScalarError, format_scalar, parse_scalar
from .symbols import (ALL_AXIOMS, BILINEAR_ONLY, SymbolError, SymbolExpr,
                      build_axiom_lattice, is_consequence,
                      matrix_realization_check, replay_certificate)


class UsageError(Exception):
    pass


def _emit(payload, fmt):
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True)
    return _as_text(payload)


def _as_text(payload, indent=0):
    pad = "  " * indent
    if isinstance(payload, dict):
        lines = []
        for k in sorted(payload):
            v = payload[k]
            if isinstance(v, (dict, list)):
                lines.append("%s%s:" % (pad, k))
                lines.append(_as_text(v, indent + 1))
            else:
                lines.append("%s%s: %s" % (pad, k, v))
        return "\n".join(lines)
    if isinstance(payload, list):
        return "\n".join(_as_text(v, indent) for v in payload)
    return "%s%s" % (pad, payload)


def _parse_vector(text):
    return [Fraction(x) for x in text.strip().split(",") if x.strip()]


def _parse_plane(text, ambient):
    """"<vec>;<vec>" gives a basis; "eq:<vec>;<vec>" gives equations."""
    text = text.strip()
    if text.startswith("eq:"):
        eqs = [_parse_vector(v) for v in text[3:].split(";") if v.strip()]
        return Plane.from_equations(ambient, eqs)
    basis = [_parse_vector(v) for v in text.split(";") if v.strip()]
    return Plane(ambient, tuple(tuple(v) for v in basis))


def _load_roots(source, n, ambient):
    """--roots <file|builtin:restricted|builtin:sl-standard>."""
    if source == "builtin:restricted":
        if n is None:
            raise UsageError("builtin:restricted needs --n")
        return list(build_root_system(n).roots), n
    if source == "builtin:sl-standard":
        if n is None:
            raise UsageError("builtin:sl-standard needs --n")
        return list(standard_sl_roots(2 * n)), 2 * n
    try:
        with open(source, "r", encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh if ln.strip()
                     and not ln.strip().startswith("#")]
    except OSError as exc:
        raise UsageError("cannot read roots from %r: %s" % (source, exc))
    roots = [Root.parse(ln) for ln in lines]
    if not roots:
        raise UsageError("no roots in %r" % source)
    dim = ambient or roots[0].n
    return roots, dim


def _model(args):
    return GroupModel(args.model, args.n)


def _grid(args):
    if getattr(args, "grid", None):
        return tuple(parse_scalar(v) for v in args.grid.split(","))
    return None


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_verify(args):
    model = _model(args)
    reports = run_suite(model, args.suite, args.regime, _grid(args))
    payload = [r.to_json_dict() for r in reports]
    failures = sum(1 for r in reports if not r.passed)
    summary = {"model": model.family, "n": model.n, "suite": args.suite,
               "regime": args.regime, "reports": payload,
               "checked": len(reports), "failed": failures}
    print(_emit(summary, args.format))
    return 1 if failures else 0


def cmd_generic(args):
    roots, ambient = _load_roots(args.roots, args.n, args.ambient)
    hps = lyapunov_hyperplanes(roots, ambient)
    if not args.plane:
        raise UsageError("generic needs --plane")
    plane = _parse_plane(args.plane, ambient)
    verdict = is_generic(plane, hps)
    payload = verdict.describe()
    payload["hyperplanes"] = [str(h) for h in hps]
    print(_emit(payload, args.format))
    return 0


def cmd_stable(args):
    roots, ambient = _load_roots(args.roots, args.n, args.ambient)
    region = _parse_plane(args.region, ambient) if args.region else None
    if args.check:
        point = _parse_vector(args.check)
        values = [r.eval(point) for r in roots]
        ok = all(v < 0 for v in values)
        payload = {"check": [str(x) for x in point],
                   "values": [str(v) for v in values],
                   "valid": ok}
        if region is not None:
            payload["on_region"] = region.contains(point)
            ok = ok and payload["on_region"]
            payload["valid"] = ok
        print(_emit(payload, args.format))
        return 0 if ok else 1
    result = find_stable_element(roots, region=region, ambient_dim=ambient)
    print(_emit(result.describe(roots), args.format))
    return 0


def cmd_chambers(args):
    roots, ambient = _load_roots(args.roots, args.n, args.ambient)
    region = _parse_plane(args.region, ambient) if args.region else None
    hps = lyapunov_hyperplanes(roots, ambient)
    cm = weyl_chambers(hps, region=region, ambient_dim=ambient)
    payload = {"hyperplanes": [str(h) for h in hps],
               "count": len(cm), "chambers": cm.describe()}
    print(_emit(payload, args.format))
    return 0


def cmd_reduce(args):
    if args.system == "standard":
        if args.ambient is None:
            raise UsageError("standard-system words need --ambient")
        system = StandardSystem(args.ambient)
    else:
        system = RestrictedSystem(_model(args))
    try:
        with open(args.wordfile, "r", encoding="utf-8") as fh:
            word = Word.parse(fh.read(), system)
    except OSError as exc:
        raise UsageError("cannot read word file: %s" % exc)
    region = _parse_plane(args.region, system.ambient_dim) if args.region else None
    outcome = reduce_cycle(word, region=region, budget=args.budget)
    payload = outcome.describe()
    print(_emit(payload, args.format))
    return 0 if outcome.reduced_to_empty else 1


def cmd_decompose(args):
    model = _model(args)
    r = Root.parse(args.root_r)
    p = Root.parse(args.root_p)
    a = tuple(parse_scalar(v) for v in args.a.split(","))
    b = tuple(parse_scalar(v) for v in args.b.split(","))
    factors, laws = decompose_commutator(model, r, p, a, b)
    payload = {
        "model": model.family, "n": model.n,
        "r": str(r), "p": str(p),
        "a": [format_scalar(x) for x in a],
        "b": [format_scalar(x) for x in b],
        "factors": [{"root": str(q),
                     "params": [format_scalar(x) for x in vals]}
                    for q, vals in factors],
        "laws": [law.describe() for law in laws],
    }
    print(_emit(payload, args.format))
    return 0


def cmd_symbol(args):
    universe = [parse_scalar(v) for v in args.universe.split(",")]
    kinds = ALL_AXIOMS if args.axioms == "all" else BILINEAR_ONLY
    lattice = build_axiom_lattice(universe, kinds)
    try:
        items = json.loads(args.expr)
        expr = SymbolExpr.from_pairs(
            [((parse_scalar(str(s)), parse_scalar(str(t))), int(e))
             for (s, t), e in items])
    except (ValueError, TypeError) as exc:
        raise UsageError("bad --expr, want JSON [[[s,t],e],...]: %s" % exc)
    result = is_consequence(expr, lattice)
    payload = result.describe(lattice)
    payload["expression"] = str(expr)
    payload["lattice"] = lattice.describe()
    if result.is_consequence:
        payload["replay_ok"] = replay_certificate(result, lattice) == \
            dict(expr.vector())
        payload["matrix_realization_identity"] = matrix_realization_check(expr)
    print(_emit(payload, args.format))
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(
        prog="chevalley",
        description="Exact verification of split-group generator relations, "
                    "hyperplane genericity analysis, and cycle-word reduction.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, model=False, roots=False, fmt=True):
        if model:
            p.add_argument("--model", choices=("sp", "sl-r", "sl-c"),
                           default="sp")
            p.add_argument("--n", type=int, default=2)
        if roots:
            p.add_argument("--roots", default="builtin:restricted",
                           help="file, builtin:restricted, or builtin:sl-standard")
            p.add_argument("--n", type=int, default=None,
                           help="rank for builtin root lists")
            p.add_argument("--ambient", type=int, default=None)
        if fmt:
            p.add_argument("--format", choices=("json", "text"),
                           default="json")

    p = sub.add_parser("verify", help="run relation/conjugation/monomial suites")
    common(p, model=True)
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--regime", choices=REGIMES, default=GRID)
    p.add_argument("--grid", default=None,
                   help="comma list of nonzero rationals (default grid: %s)"
                        % ",".join(str(g) for g in DEFAULT_GRID))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generic", help="2-plane genericity against an arrangement")
    common(p, roots=True)
    p.add_argument("--plane", required=False,
                   help='basis "<vec>;<vec>" or equations "eq:<vec>;<vec>"')
    p.set_defaults(func=cmd_generic)

    p = sub.add_parser("stable", help="common strictly-stable element search")
    common(p, roots=True)
    p.add_argument("--region", default=None,
                   help="plane expression restricting the search")
    p.add_argument("--check", default=None,
                   help="validate this point instead of searching")
    p.set_defaults(func=cmd_stable)

    p = sub.add_parser("chambers", help="enumerate chambers with sample points")
    common(p, roots=True)
    p.add_argument("--region", default=None)
    p.set_defaults(func=cmd_chambers)

    p = sub.add_parser("reduce", help="reduce a cycle word file to the empty word")
    common(p, model=True)
    p.add_argument("wordfile")
    p.add_argument("--system", choices=("restricted", "standard"),
                   default="restricted")
    p.add_argument("--ambient", type=int, default=None,
                   help="matrix size for the standard system")
    p.add_argument("--region", default=None)
    p.add_argument("--budget", type=int, default=10000)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("decompose", help="commutator factor decomposition")
    common(p, model=True)
    p.add_argument("-r", dest="root_r", required=True, help="first root")
    p.add_argument("-p", dest="root_p", required=True, help="second root")
    p.add_argument("-a", required=True, help="first parameter(s), comma separated")
    p.add_argument("-b", required=True, help="second parameter(s)")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("symbol", help="symbol-lattice consequence check")
    common(p)
    p.add_argument("--universe", required=True,
                   help="comma list of nonzero rationals")
    p.add_argument("--expr", required=True,
                   help='JSON [[[s,t],e],...] exponent list')
    p.add_argument("--axioms", choices=("all", "bilinear"), default="all")
    p.set_defaults(func=cmd_symbol)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (UsageError, GeneratorError, RootError, RelationError,
            ArrangementError, CycleError, SymbolError, ScalarError,
            MatrixError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
