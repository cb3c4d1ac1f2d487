"""Command-line front end: ``signiter {gen,table,verify,sign,trace}``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 numerical failure (singular step or divergence), 4 not converged.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .engine import (
    CONVERGED,
    DIVERGED,
    EPS,
    MAX_ITERATIONS,
    SINGULAR_STEP,
    SignError,
    matrix_sign_iterate,
    scalar_iterate,
    sign_residuals,
)
from .matrix_io import MatrixFormatError, format_entry, parse_entry, read_matrix, write_matrix
from .pade import IterationError, IterationSpec, build_phi, family_table
from .verify import run_verification

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_NOT_CONVERGED = 4

_STATUS_EXIT = {
    CONVERGED: EXIT_OK,
    SINGULAR_STEP: EXIT_NUMERIC,
    DIVERGED: EXIT_NUMERIC,
    MAX_ITERATIONS: EXIT_NOT_CONVERGED,
}


class UsageError(Exception):
    pass


def _spec_text(spec: IterationSpec) -> str:
    return (
        f"{spec.label}  family={spec.family}  s={spec.s}\n"
        f"  numerator:   {spec.num}\n"
        f"  denominator: {spec.den}\n"
    )


def _pick(flag, positional, name):
    value = flag if flag is not None else positional
    if value is None:
        raise UsageError(f"missing required argument {name}")
    return value


def _build(m: int, n: int) -> IterationSpec:
    try:
        return build_phi(m, n)
    except IterationError as exc:
        raise UsageError(str(exc)) from exc


def cmd_gen(args, out) -> int:
    spec = _build(_pick(args.m, args.m_pos, "--m"), _pick(args.n, args.n_pos, "--n"))
    if args.format == "structured":
        out.write(spec.to_json() + "\n")
    else:
        out.write(_spec_text(spec))
    return EXIT_OK


def cmd_table(args, out) -> int:
    s = _pick(args.s, args.s_pos, "--s")
    try:
        specs = family_table(s)
    except IterationError as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "structured":
        out.write(json.dumps([sp.to_dict() for sp in specs], indent=2) + "\n")
    else:
        out.write("".join(_spec_text(sp) for sp in specs))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    s_max = _pick(args.s_max, args.s_pos, "--s-max")
    if s_max < 2:
        raise UsageError("--s-max must be at least 2")
    checks = run_verification(s_max)
    failed = [c for c in checks if not c.passed]
    if args.format == "structured":
        out.write(json.dumps({"s_max": s_max, "checks": [c.to_dict() for c in checks],
                              "failed": len(failed)}, indent=2) + "\n")
    else:
        for c in checks:
            out.write(c.line() + "\n")
        kinds: dict[str, int] = {}
        for c in checks:
            kinds[c.kind] = kinds.get(c.kind, 0) + 1
        summary = ", ".join(f"{k}={v}" for k, v in kinds.items())
        out.write(f"{len(checks) - len(failed)}/{len(checks)} checks passed ({summary})\n")
        for c in failed:
            out.write(f"failed certification at s={c.s}, (m,n)=({c.m},{c.n}): {c.kind}\n")
    return EXIT_VERIFY if failed else EXIT_OK


def _default_output(path: Path) -> Path:
    return path.with_name(f"{path.stem}.sign{path.suffix or '.txt'}")


def cmd_sign(args, out) -> int:
    spec = _build(args.m if args.m is not None else 2, args.n if args.n is not None else 1)
    path = Path(args.input)
    try:
        A = read_matrix(path)
    except MatrixFormatError as exc:
        raise UsageError(str(exc)) from exc
    if A.shape[0] != A.shape[1]:
        raise UsageError(f"expected a square matrix, got {A.shape[0]}x{A.shape[1]}")
    X, report = matrix_sign_iterate(spec, A, tol=args.tol, max_iter=args.max_iter)
    inv, comm = sign_residuals(X, A)
    record = {"iteration": {"m": spec.m, "n": spec.n, "s": spec.s}, **report.to_dict(),
              "involution_residual": inv, "commutation_residual": comm}
    text = json.dumps(record, indent=2) + "\n"
    if args.report:
        Path(args.report).write_text(text)
    else:
        out.write(text)
    if report.status == CONVERGED:
        write_matrix(args.output or _default_output(path), X)
    return _STATUS_EXIT[report.status]


def cmd_trace(args, out) -> int:
    z_text = _pick(args.z0, args.z0_pos, "--z0")
    m, n = _pick(args.m, args.m_pos, "--m"), _pick(args.n, args.n_pos, "--n")
    spec = _build(m, n)
    try:
        z0 = parse_entry(z_text)
    except MatrixFormatError as exc:
        raise UsageError(str(exc)) from exc
    try:
        z, report, run = scalar_iterate(spec, z0, tol=args.tol, max_iter=args.max_iter)
    except SignError as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "structured":
        out.write(json.dumps({
            "z0": format_entry(z0),
            "iterates": [format_entry(w) for w in run.iterates[1:]],
            "errors": run.errors[1:],
            **report.to_dict(),
        }, indent=2) + "\n")
    else:
        out.write(f"{spec.label}  z0 = {format_entry(z0)}  target = {run.target:+d}\n")
        out.write(f"{'k':>3}  {'iterate':<45} {'|z_k - sign(z0)|':>18}\n")
        for k, (w, e) in enumerate(zip(run.iterates[1:], run.errors[1:]), start=1):
            out.write(f"{k:>3}  {format_entry(w):<45} {e:>18.6e}\n")
        order = report.estimated_order
        out.write(f"status: {report.status}\n")
        out.write("estimated order: " + ("n/a" if order is None else f"{order:.4f}") + "\n")
    return _STATUS_EXIT[report.status]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="signiter", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p):
        p.add_argument("--format", choices=("text", "structured"), default="text")

    p = sub.add_parser("gen", help="print one iteration phi_{m,n}")
    p.add_argument("m_pos", nargs="?", type=int, metavar="M")
    p.add_argument("n_pos", nargs="?", type=int, metavar="N")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    fmt(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("table", help="all 2s iterations of order s")
    p.add_argument("s_pos", nargs="?", type=int, metavar="S")
    p.add_argument("--s", type=int)
    fmt(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="certify minimality for orders 2..S")
    p.add_argument("s_pos", nargs="?", type=int, metavar="S")
    p.add_argument("--s-max", type=int)
    fmt(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sign", help="matrix sign of a matrix file")
    p.add_argument("--input", required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--max-iter", type=int, default=60)
    p.add_argument("--report")
    p.add_argument("--output")
    p.set_defaults(func=cmd_sign)

    p = sub.add_parser("trace", help="trace a scalar iteration")
    p.add_argument("z0_pos", nargs="?", metavar="Z0")
    p.add_argument("m_pos", nargs="?", type=int, metavar="M")
    p.add_argument("n_pos", nargs="?", type=int, metavar="N")
    p.add_argument("--z0")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--tol", type=float, default=100 * EPS)
    p.add_argument("--max-iter", type=int, default=60)
    fmt(p)
    p.set_defaults(func=cmd_trace)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "tol", None) is not None and args.tol <= 0:
        print("signiter: error: --tol must be positive", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, "max_iter", 1) < 1:
        print("signiter: error: --max-iter must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"signiter {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
