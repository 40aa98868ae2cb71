"""Command-line front end.

Subcommands: q (closed-form generic subrank), certificate (find and write a
crossing certificate), verify (modular rank trials), dim (locus dimension,
optionally cross-checked against the spanning-set oracle), table (Q table
as CSV, optionally verified), export (pattern or instantiated matrix).

Exit codes: 0 success/verified, 1 verification failure, 2 usage or regime
error.  All output is deterministic given the flags; SUBRANK_SEED provides
the fallback default seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .certificate import (
    TooFewColumnsError,
    certificate_to_json,
    find_certificate,
    validate,
)
from .combinatorics import count_rows
from .formulas import classify, dim_C_r, generic_subrank, pattern_col_count
from .modular import (
    DEFAULT_PRIME,
    instantiate,
    is_prime,
    modular_to_coordinate_list,
    random_assignment,
    subspace_dimension_oracle,
    verify_generic_rank,
)
from .pattern import build_pattern, pattern_to_coordinate_list, pattern_to_json


def _parse_dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed dims {text!r}; want e.g. 6,6,6")
    if len(dims) < 3:
        raise argparse.ArgumentTypeError("need at least 3 dimensions")
    if any(n < 1 for n in dims):
        raise argparse.ArgumentTypeError("dimensions must be positive")
    return dims


def _default_seed() -> int:
    return int(os.environ.get("SUBRANK_SEED", "0"))


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w", encoding="ascii") as fh:
            fh.write(text)


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise SystemExit(f"error: modulus {p} is not prime")


def cmd_q(args: argparse.Namespace) -> int:
    res = generic_subrank(args.dims)
    rows = count_rows(res.q, len(args.dims))
    cols = pattern_col_count(args.dims, res.q)
    if args.json:
        doc = {
            "dims": list(args.dims),
            "q": res.q,
            "binding_constraint": res.binding_constraint,
            "root_argument": res.root_argument,
            "rows_at_q": rows,
            "cols_at_q": cols,
        }
        print(json.dumps(doc, indent=2))
    else:
        dims_s = ",".join(str(n) for n in args.dims)
        print(f"Q({dims_s}) = {res.q}")
        print(f"binding constraint: {res.binding_constraint}")
        print(f"pattern at r={res.q}: {rows} rows x {cols} columns")
    return 0


def cmd_certificate(args: argparse.Namespace) -> int:
    report = classify(args.dims, args.r)
    if not report.certificate_regime:
        if not report.r_within_dims:
            print(f"error: r={args.r} exceeds min dimension {min(args.dims)}", file=sys.stderr)
        else:
            print(
                f"error: {report.n_cols} columns < {report.n_rows} rows; "
                f"full row rank is impossible at r={args.r}",
                file=sys.stderr,
            )
        return 2
    pm = build_pattern(args.r, args.dims)
    cert = find_certificate(pm)
    verdict = validate(pm, cert)
    print(f"certificate: degree {cert.degree}, {len(cert.steps)} steps")
    print(f"validation: {'ok' if verdict.ok else 'FAILED'} ({verdict.detail})")
    text = certificate_to_json(cert)
    if args.out:
        _write(text, args.out)
        print(f"wrote {args.out}")
    else:
        print(text)
    return 0 if verdict.ok else 1


def cmd_verify(args: argparse.Namespace) -> int:
    _check_prime(args.prime)
    if args.r > min(args.dims):
        print(f"error: r={args.r} exceeds min dimension {min(args.dims)}", file=sys.stderr)
        return 2
    pm = build_pattern(args.r, args.dims)
    expected = count_rows(args.r, len(args.dims))
    verdict = verify_generic_rank(pm, expected, args.trials, args.prime, args.seed)
    print(f"pattern: {pm.n_rows} rows x {pm.n_cols} columns, expecting rank {expected}")
    print(verdict.detail)
    print("ok" if verdict.ok else "NOT ok")
    return 0 if verdict.ok else 1


def cmd_dim(args: argparse.Namespace) -> int:
    res = dim_C_r(args.dims, args.r)
    print(f"regime: {res.regime}")
    print(f"dim = {res.dim}")
    if args.oracle:
        _check_prime(args.prime)
        got = subspace_dimension_oracle(args.dims, args.r, args.prime, args.seed)
        if got != res.dim:
            print(f"oracle disagrees: formula {res.dim}, oracle {got}", file=sys.stderr)
            return 1
        print(f"oracle agrees: {got}")
    return 0


def cmd_table(args: argparse.Namespace) -> int:
    _check_prime(args.prime)
    header = "n,q,rows,cols"
    if args.verify:
        header += ",certificate_ok,rank_ok"
    lines = [header]
    all_ok = True
    for n in range(1, args.max + 1):
        q = generic_subrank((n, n, n)).q
        rows = count_rows(q, 3)
        cols = pattern_col_count((n, n, n), q)
        line = f"{n},{q},{rows},{cols}"
        if args.verify:
            pm = build_pattern(q, (n, n, n))
            cert = find_certificate(pm)
            cert_ok = validate(pm, cert).ok
            rank_ok = verify_generic_rank(pm, rows, args.trials, args.prime, args.seed).ok
            all_ok = all_ok and cert_ok and rank_ok
            line += f",{str(cert_ok).lower()},{str(rank_ok).lower()}"
        lines.append(line)
    _write("\n".join(lines) + "\n", args.out)
    return 0 if all_ok else 1


def cmd_export(args: argparse.Namespace) -> int:
    if args.r > min(args.dims):
        print(f"error: r={args.r} exceeds min dimension {min(args.dims)}", file=sys.stderr)
        return 2
    pm = build_pattern(args.r, args.dims)
    if args.format == "json":
        text = pattern_to_json(pm)
    elif args.format == "coord":
        text = pattern_to_coordinate_list(pm)
    else:
        _check_prime(args.prime)
        mm = instantiate(pm, random_assignment(pm, args.seed, args.prime))
        text = modular_to_coordinate_list(mm)
    _write(text, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subrank",
        description="Constructive generic-subrank certificates for tensors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, with_r: bool = True) -> None:
        p.add_argument("--dims", type=_parse_dims, required=True,
                       help="comma-separated dimensions, e.g. 6,6,6")
        if with_r:
            p.add_argument("--r", type=int, required=True, help="target subrank r")

    p = sub.add_parser("q", help="closed-form generic subrank")
    add_common(p, with_r=False)
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.set_defaults(func=cmd_q)

    p = sub.add_parser("certificate", help="find and validate a crossing certificate")
    add_common(p)
    p.add_argument("--out", help="write certificate JSON here")
    p.set_defaults(func=cmd_certificate)

    p = sub.add_parser("verify", help="modular rank verification")
    add_common(p)
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--trials", type=int, default=3)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dim", help="dimension of the subrank->=r locus")
    add_common(p)
    p.add_argument("--oracle", action="store_true",
                   help="cross-check against the spanning-set rank oracle")
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("table", help="CSV table of Q(n) for n = 1..max")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--verify", action="store_true",
                   help="also run certificate and modular rank checks")
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("export", help="export the pattern or an instantiation")
    add_common(p)
    p.add_argument("--format", choices=["json", "coord", "values"], default="json")
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--out", help="write here instead of stdout")
    p.set_defaults(func=cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TooFewColumnsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
