"""``cliffalg`` command line: eval, table, check, indep, orth.

Exit codes: 0 success, 1 a property or verification failed, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional, Sequence

from ..blades import RATIONAL, SCALAR_KINDS, Signature, rational
from ..errors import AlgebraError
from ..morphisms import GramMatrix, is_independent, orthogonalize
from ..multivector import Multivector, format_blade, format_multivector, format_scalar
from ..properties import congruence_error, run_suites
from .evaluator import evaluate
from .parser import ParseError, parse

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _numbers(text: str) -> List[str]:
    return [tok.strip() for tok in text.split(",") if tok.strip()]


def signature_from_args(args) -> Signature:
    kind = args.scalar
    if args.sig is not None:
        parts = _numbers(args.sig)
        if len(parts) != 3 or not all(p.isdigit() for p in parts):
            raise UsageError("--sig expects three non-negative integers p,q,r")
        p, q, r = map(int, parts)
        sig = Signature.from_pqr(p, q, r, kind)
    else:
        try:
            values = [rational(v) for v in _numbers(args.diag)]
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"--diag expects a comma separated list of numbers, got {args.diag!r}")
        sig = Signature.from_diag(values, kind)
    if sig.dim == 0:
        raise UsageError("the signature declares no indices")
    return sig


def _add_signature(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--sig", help="p,q,r: p indices square to +1, then q to -1, then r to 0")
    group.add_argument("--diag", help="q(1),q(2),...: explicit squares of the generators")
    parser.add_argument("--scalar", choices=SCALAR_KINDS, default=RATIONAL)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cliffalg",
        description="Multivector calculator over set-indexed Clifford algebras. "
        "Products * ^ <| |> . (geometric, outer, left/right contraction, scalar) "
        "share one left-associative precedence level, tighter than + and -.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate an expression")
    _add_signature(p)
    p.add_argument("expr")

    p = sub.add_parser("table", help="print the blade product table")
    _add_signature(p)
    p.add_argument("--max-grade", type=int, default=None)

    p = sub.add_parser("check", help="run the randomized invariant suites")
    _add_signature(p)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("indep", help="decide linear independence by the wedge test")
    _add_signature(p)
    p.add_argument("--vectors", required=True, help='rows separated by ";", entries by ","')

    p = sub.add_parser("orth", help="orthogonalize a Gram matrix read from a file")
    p.add_argument("--gram", required=True)
    return parser


def cmd_eval(args, out) -> int:
    sig = signature_from_args(args)
    X = evaluate(parse(args.expr), sig)
    print(format_multivector(X), file=out)
    return EXIT_OK


def cmd_table(args, out) -> int:
    sig = signature_from_args(args)
    blades = sig.blades(args.max_grade)
    for H in blades:
        eh = Multivector.blade(H, sig)
        for J in blades:
            ej = Multivector.blade(J, sig)
            lhs, rhs = (format_blade(K) if K else "1" for K in (H, J))
            print(f"{lhs} * {rhs} = {format_multivector(eh * ej)}", file=out)
    return EXIT_OK


def cmd_check(args, out) -> int:
    sig = signature_from_args(args)
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    results = run_suites(sig, args.trials, args.seed, workers=args.workers)
    failed = False
    for res in results:
        status = "ok" if res.passed else "FAIL"
        print(f"{res.name}: {res.trials - len(res.failures)}/{res.trials} {status}", file=out)
        for msg in res.failures:
            failed = True
            print(f"  {msg}", file=out)
    print("all suites passed" if not failed else "some suites FAILED", file=out)
    return EXIT_FAIL if failed else EXIT_OK


def parse_rows(text: str) -> List[list]:
    rows = []
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        try:
            rows.append([rational(v) for v in _numbers(chunk)])
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"cannot read vector {chunk.strip()!r}")
    return rows


def cmd_indep(args, out) -> int:
    sig = signature_from_args(args)
    if sig.kind != RATIONAL:
        raise UsageError("indep works over rational scalars only")
    rows = parse_rows(args.vectors)
    for row in rows:
        if len(row) != sig.dim:
            raise UsageError(f"each vector needs {sig.dim} entries, got {len(row)}")
    vectors = [Multivector.vector(row, sig) for row in rows]
    print("independent" if is_independent(vectors) else "dependent", file=out)
    return EXIT_OK


def cmd_orth(args, out) -> int:
    try:
        G = GramMatrix.read(args.gram)
    except OSError as exc:
        raise UsageError(f"cannot read {args.gram}: {exc.strerror}")
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad Gram file {args.gram}: {exc}")
    P, d = orthogonalize(G)
    for row in P:
        print("P " + " ".join(format_scalar(x) for x in row), file=out)
    print("d " + " ".join(format_scalar(x) for x in d), file=out)
    problem = congruence_error([list(r) for r in G.entries], P, d)
    if problem:
        print(f"congruence check FAILED: {problem}", file=out)
        return EXIT_FAIL
    print("congruence verified: P G P^T = diag(d)", file=out)
    return EXIT_OK


COMMANDS = {
    "eval": cmd_eval,
    "table": cmd_table,
    "check": cmd_check,
    "indep": cmd_indep,
    "orth": cmd_orth,
}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, AlgebraError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
