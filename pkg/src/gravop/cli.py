"""Command-line front end: ``gravop <command> ...``.

Exit status: 0 on success or a passing verification, 1 when a verification
fails, 2 on usage, parse or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import checks, gravity
from .arnold import RingDescriptor, RingError, format_element, poincare
from .expression import ExpressionSyntaxError, parse_element
from .gravity import GravityError
from .poisson import operad
from .poisson.operad import OperadElement, OperadError
from .unitary import apply_delta_star, kernel_basis_degree, top_operator


class UsageError(Exception):
    pass


def _emit(args, human: str, data) -> None:
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(human)


def _parities(text: str, size: int) -> tuple[int, ...]:
    parts = [p for p in text.replace(",", " ").split() if p]
    if len(parts) != size or any(p not in ("0", "1") for p in parts):
        raise UsageError(f"--parities needs {size} entries from 0/1, got {text!r}")
    return tuple(int(p) for p in parts)


def _load_element(path: str) -> OperadElement:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON: {exc}") from exc
    try:
        return OperadElement.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path}: not an operad element: {exc}") from exc


# ---------------------------------------------------------------------------
# commands


def cmd_poincare(args) -> int:
    ring = RingDescriptor(args.n, args.d, args.flavor)
    prof = poincare(ring)
    _emit(args, prof.format(), {"n": args.n, "d": args.d, "flavor": args.flavor, "ranks": prof.as_dict()})
    return 0


def cmd_normal_form(args) -> int:
    ring = RingDescriptor(args.n, args.d, args.flavor)
    e = parse_element(args.expr, ring)
    _emit(args, format_element(e), e.to_json())
    return 0


def cmd_delta_star(args) -> int:
    op = top_operator(args.n, args.d)
    e = parse_element(args.expr, op.ring)
    out = apply_delta_star(op, e)
    _emit(args, format_element(out), out.to_json())
    return 0


def cmd_kernel(args) -> int:
    if args.operator == "delta-star":
        basis = kernel_basis_degree(args.n, args.d, args.degree)
        human = [format_element(b) for b in basis]
        data = [b.to_json() for b in basis]
    else:
        basis = operad.kernel_basis(args.n, args.d, args.degree)
        human = [str(b) for b in basis]
        data = [b.to_json() for b in basis]
    text = f"rank {len(basis)}" + "".join(f"\n  {h}" for h in human)
    _emit(args, text, {"n": args.n, "d": args.d, "degree": args.degree, "operator": args.operator,
                       "rank": len(basis), "basis": data})
    return 0


def cmd_compose(args) -> int:
    left, right = _load_element(args.left), _load_element(args.right)
    for name, e in (("left", left), ("right", right)):
        if e.d != args.d:
            raise UsageError(f"{name} element has d={e.d}, expected {args.d}")
    out = operad.compose(left, args.slot, right)
    _emit(args, str(out), out.to_json())
    return 0


def cmd_bracket(args) -> int:
    b = operad.bracket_generator(args.k, args.d)
    _emit(args, str(b), b.to_json())
    return 0


def _report_lines(reports: list[dict]) -> str:
    lines = []
    for r in reports:
        par = "".join(str(p) for p in r["parities"])
        lines.append(f"k={r['k']} l={r['l']} d={r['d']} parities={par}: {'pass' if r['pass'] else 'FAIL'}")
    return "\n".join(lines)


def cmd_verify_gravity(args) -> int:
    if args.all_parities:
        reports = gravity.sweep_gravity_relation(args.k, args.l, args.d)
    else:
        par = _parities(args.parities, args.k + args.l) if args.parities else (0,) * (args.k + args.l)
        reports = [gravity.gravity_relation_report(args.k, args.l, par, args.d)]
    ok = all(r["pass"] for r in reports)
    data = reports[0] if len(reports) == 1 else {
        "check": "gravity_relation_sweep", "k": args.k, "l": args.l, "d": args.d, "reports": reports, "pass": ok,
    }
    _emit(args, _report_lines(reports), data)
    return 0 if ok else 1


def cmd_verify_main(args) -> int:
    rep = gravity.verify_main_theorem(args.n, args.d)
    lines = [f"n={args.n} d={args.d}  ({rep['alignment']})", "degree  gravity  suspended_th"]
    for r in rep["rows"]:
        lines.append(f"{r['degree']:>6}  {r['gravity']:>7}  {r['suspended_th']:>12}  {'pass' if r['pass'] else 'FAIL'}")
    lines.append("pass" if rep["pass"] else "FAIL")
    _emit(args, "\n".join(lines), rep)
    return 0 if rep["pass"] else 1


def cmd_verify_all(args) -> int:
    results = checks.run_all(args.max_n, args.max_d)
    ok = all(r.passed for r in results)
    lines = [f"{'pass' if r.passed else 'FAIL'}  {r.claim:<18} {r.label}" for r in results]
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    _emit(args, "\n".join(lines), {"max_n": args.max_n, "max_d": args.max_d, "pass": ok,
                                   "results": [r.to_json() for r in results]})
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# argument parsing


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")

    p = argparse.ArgumentParser(prog="gravop", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("poincare", parents=[common], help="graded ranks of a ring")
    s.add_argument("--flavor", choices=["conf", "fiber", "th"], default="conf")
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--d", type=_positive, required=True)
    s.set_defaults(func=cmd_poincare)

    s = sub.add_parser("normal-form", parents=[common], help="reduce an expression to the admissible basis")
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--d", type=_positive, required=True)
    s.add_argument("--flavor", choices=["conf", "fiber", "th"], default="conf")
    s.add_argument("--expr", required=True)
    s.set_defaults(func=cmd_normal_form)

    s = sub.add_parser("delta-star", parents=[common], help="apply Delta_d^* to a conf ring element")
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--d", type=_positive, required=True)
    s.add_argument("--expr", required=True)
    s.set_defaults(func=cmd_delta_star)

    s = sub.add_parser("kernel", parents=[common], help="kernel basis in one degree")
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--d", type=_positive, required=True)
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--operator", choices=["delta-star", "delta"], default="delta-star",
                   help="Delta_d^* on the conf ring (default) or Delta on the Poisson operad")
    s.set_defaults(func=cmd_kernel)

    s = sub.add_parser("compose", parents=[common], help="partial composition of operad elements given as JSON files")
    s.add_argument("--d", type=_positive, required=True)
    s.add_argument("--left", required=True)
    s.add_argument("--slot", type=_positive, required=True)
    s.add_argument("--right", required=True)
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser("bracket", parents=[common], help="the bracket generator B_k = Delta(mu_k)")
    s.add_argument("--k", type=_positive, required=True)
    s.add_argument("--d", type=_positive, required=True)
    s.set_defaults(func=cmd_bracket)

    v = sub.add_parser("verify", parents=[common], help="verification runs")
    vs = v.add_subparsers(dest="check", required=True)

    s = vs.add_parser("gravity", parents=[common], help="the gravity relation for given k, l")
    s.add_argument("--k", type=_positive, required=True)
    s.add_argument("--l", type=_positive, required=True)
    s.add_argument("--d", type=_positive, required=True)
    s.add_argument("--all-parities", action="store_true")
    s.add_argument("--parities", help="k+l entries from 0/1, e.g. 0,1,1,0 (default all 0)")
    s.set_defaults(func=cmd_verify_gravity)

    s = vs.add_parser("main-theorem", parents=[common], help="gravity ranks against suspended fixed-point homology")
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--d", type=_positive, required=True)
    s.set_defaults(func=cmd_verify_main)

    s = vs.add_parser("all", parents=[common], help="every batch check")
    s.add_argument("--max-n", type=_positive, default=6)
    s.add_argument("--max-d", type=_positive, default=3)
    s.set_defaults(func=cmd_verify_all)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "json"):
        args.json = False
    try:
        return args.func(args)
    except (UsageError, ExpressionSyntaxError, RingError, OperadError, GravityError) as exc:
        print(f"gravop: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
